//! The order-2 facts: a maximal invertible block determines the whole
//! matrix, and a rank-r matrix splits into at most 3r rank-one pieces
//! around any r x r invertible block.

use crate::algebra::{ExactMatrix, Scalar};
use crate::error::{Error, Result};
use crate::tensor::Tensor;

use super::{as_matrix, PartitionDecomposition, PartitionTerm};

/// Rows `x`, columns `y` of an invertible `r x r` block, `r = rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullRankBlock {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub row: usize,
    pub col: usize,
    pub expected: Scalar,
    pub actual: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconstruction {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl Reconstruction {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

fn expect_matrix(a: &Tensor) -> Result<ExactMatrix> {
    if a.order() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "expected an order-2 tensor, got order {}",
            a.order()
        )));
    }
    Ok(as_matrix(a))
}

/// Lexicographically least `(X, Y)` with `A[X, Y]` invertible of size
/// `rank(A)`. Greedy choice is lex-least because independent row sets form
/// a matroid.
pub fn max_full_rank_submatrix(a: &Tensor) -> Result<FullRankBlock> {
    let m = expect_matrix(a)?;
    let rows = m.transpose().rref().pivots;
    let all_cols: Vec<usize> = (0..m.cols()).collect();
    let cols = m.submatrix(&rows, &all_cols).rref().pivots;
    Ok(FullRankBlock {
        rank: rows.len(),
        rows,
        cols,
    })
}

/// Checks `A(x, y) = A[{x}, Y] A[X, Y]^-1 A[X, {y}]` for all `x` outside `X`
/// and `y` outside `Y`.
pub fn reconstruct_outside(a: &Tensor, rows: &[usize], cols: &[usize]) -> Result<Reconstruction> {
    let m = expect_matrix(a)?;
    if rows.len() != cols.len()
        || rows.iter().any(|&i| i >= m.rows())
        || cols.iter().any(|&j| j >= m.cols())
    {
        return Err(Error::IndexOutOfRange("block indices".into()));
    }
    let inv = m
        .submatrix(rows, cols)
        .invert()
        .map_err(|_| Error::SingularBlock)?;
    let out_rows: Vec<usize> = (0..m.rows()).filter(|i| !rows.contains(i)).collect();
    let out_cols: Vec<usize> = (0..m.cols()).filter(|j| !cols.contains(j)).collect();
    // L = A[X^c, Y] * inv, compared against A[X^c, Y^c] via L * A[X, Y^c]
    let left = m.submatrix(&out_rows, cols).mul(&inv)?;
    let pred = left.mul(&m.submatrix(rows, &out_cols))?;
    let mut violations = Vec::new();
    for (pi, &x) in out_rows.iter().enumerate() {
        for (pj, &y) in out_cols.iter().enumerate() {
            let expected = pred.get(pi, pj);
            let actual = m.get(x, y);
            if expected != actual {
                violations.push(Violation {
                    row: x,
                    col: y,
                    expected: expected.clone(),
                    actual: actual.clone(),
                });
            }
        }
    }
    Ok(Reconstruction {
        checked: out_rows.len() * out_cols.len(),
        violations,
    })
}

fn rank_one(field: crate::algebra::Field, u: Vec<Scalar>, w: Vec<Scalar>) -> PartitionTerm {
    PartitionTerm::new(
        2,
        &[0],
        Tensor::vector(field, u).expect("nonempty"),
        Tensor::vector(field, w).expect("nonempty"),
    )
    .expect("split {0}")
}

/// Row terms on `X`, column terms on `Y` below `X`, and the rank-r
/// remainder block `A[X^c, Y] A[X, Y]^-1 A[X, Y^c]`.
pub fn three_r_decomposition(a: &Tensor) -> Result<PartitionDecomposition> {
    let m = expect_matrix(a)?;
    let field = m.field();
    let (n1, n2) = (m.rows(), m.cols());
    let block = max_full_rank_submatrix(a)?;
    let (x, y) = (&block.rows, &block.cols);
    let mut dec = PartitionDecomposition::empty(a.dims(), field);
    if block.rank == 0 {
        return Ok(dec);
    }
    let xc: Vec<usize> = (0..n1).filter(|i| !x.contains(i)).collect();
    let yc: Vec<usize> = (0..n2).filter(|j| !y.contains(j)).collect();
    for &i in x {
        let mut e = vec![field.zero(); n1];
        e[i] = field.one();
        dec.push(rank_one(field, e, m.row(i).to_vec()));
    }
    for &j in y {
        let mut col = vec![field.zero(); n1];
        for &i in &xc {
            col[i] = m.get(i, j).clone();
        }
        let mut e = vec![field.zero(); n2];
        e[j] = field.one();
        dec.push(rank_one(field, col, e));
    }
    if !xc.is_empty() && !yc.is_empty() {
        let inv = m.submatrix(x, y).invert()?;
        let left = m.submatrix(&xc, y);
        let right = inv.mul(&m.submatrix(x, &yc))?;
        for k in 0..block.rank {
            let mut u = vec![field.zero(); n1];
            for (pi, &i) in xc.iter().enumerate() {
                u[i] = left.get(pi, k).clone();
            }
            let mut w = vec![field.zero(); n2];
            for (pj, &j) in yc.iter().enumerate() {
                w[j] = right.get(k, pj).clone();
            }
            dec.push(rank_one(field, u, w));
        }
    }
    Ok(dec.canonical())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    #[test]
    fn block_examples() {
        let q = Field::Rational;
        let z = Tensor::zeros(&[2, 3], q);
        assert_eq!(max_full_rank_submatrix(&z).unwrap().rank, 0);
        let a = Tensor::from_i64_matrix(q, &[&[1, 2], &[2, 4]]);
        let b = max_full_rank_submatrix(&a).unwrap();
        assert_eq!((b.rows.as_slice(), b.cols.as_slice(), b.rank), (&[0][..], &[0][..], 1));
        let id = Tensor::from_matrix(&ExactMatrix::identity(3, q));
        assert_eq!(max_full_rank_submatrix(&id).unwrap().rows, vec![0, 1, 2]);
    }

    #[test]
    fn lex_least_block_skips_dependent_rows() {
        let q = Field::Rational;
        let a = Tensor::from_i64_matrix(q, &[&[0, 0, 0], &[0, 1, 1], &[0, 2, 2], &[1, 0, 0]]);
        let b = max_full_rank_submatrix(&a).unwrap();
        assert_eq!((b.rows, b.cols), (vec![1, 3], vec![0, 1]));
    }

    #[test]
    fn reconstruction_examples() {
        let q = Field::Rational;
        let a = Tensor::from_i64_matrix(q, &[&[1, 2], &[2, 4]]);
        let r = reconstruct_outside(&a, &[0], &[0]).unwrap();
        assert_eq!((r.checked, r.holds()), (1, true));
        let r = reconstruct_outside(&a, &[0, 1], &[0, 1]);
        assert_eq!(r, Err(Error::SingularBlock));
        let bad = Tensor::from_i64_matrix(q, &[&[1, 2], &[2, 5]]);
        let r = reconstruct_outside(&bad, &[0], &[0]).unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].expected, q.from_i64(4));
    }

    #[test]
    fn three_r_examples() {
        let f = Field::Prime(5);
        assert!(three_r_decomposition(&Tensor::zeros(&[4, 4], f)).unwrap().is_empty());
        let u = Tensor::vector(f, [1, 2, 0, 3].map(|v| f.from_i64(v)).to_vec()).unwrap();
        let w = Tensor::vector(f, [0, 1, 4, 4].map(|v| f.from_i64(v)).to_vec()).unwrap();
        let a = Tensor::outer(&u, &w, &[0]).unwrap();
        let d = three_r_decomposition(&a).unwrap();
        assert!(d.len() <= 3 && d.reproduces(&a));
    }
}
