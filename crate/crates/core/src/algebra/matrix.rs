//! Dense exact matrices and elimination.
//!
//! Over GF(p) elimination runs on raw residues. Over the rationals each row is
//! first scaled to integers and a fraction-free (Bareiss) forward pass produces
//! an echelon form; only the final back substitution touches fractions.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::{denominator_lcm, integer_content, inv_mod, Field, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

/// Output of [`ExactMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        ExactMatrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, field: Field, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(format!("entry {bad} not in {field}")));
        }
        Ok(ExactMatrix {
            rows,
            cols,
            field,
            data,
        })
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_vec(r, c, field, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|row| row.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, data).expect("well-formed literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            data,
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        ExactMatrix {
            rows: rows.len(),
            cols: cols.len(),
            field: self.field,
            data,
        }
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Reduced row echelon form, rank and pivot columns.
    pub fn rref(&self) -> Rref {
        match self.field {
            Field::Prime(p) => self.rref_mod(p),
            Field::Rational => self.rref_rational(),
        }
    }

    pub fn rank(&self) -> usize {
        match self.field {
            Field::Prime(p) => self.rref_mod(p).rank,
            // the fraction-free forward pass already determines the rank
            Field::Rational => bareiss_echelon(self.integer_rows(), self.cols).1.len(),
        }
    }

    fn rref_mod(&self, p: u32) -> Rref {
        let mut rows: Vec<Vec<u32>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|s| s.residue().unwrap()).collect())
            .collect();
        let pivots = gauss_jordan_mod(&mut rows, self.cols, p);
        let data = rows
            .into_iter()
            .flatten()
            .map(|v| Scalar::Mod { value: v, p })
            .collect();
        Rref {
            rank: pivots.len(),
            matrix: ExactMatrix {
                rows: self.rows,
                cols: self.cols,
                field: self.field,
                data,
            },
            pivots,
        }
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row: Vec<&BigRational> =
                    self.row(i).iter().map(|s| s.as_rational().unwrap()).collect();
                let l = denominator_lcm(row.iter().copied());
                row.iter()
                    .map(|q| (*q * BigRational::from_integer(l.clone())).to_integer())
                    .collect()
            })
            .collect()
    }

    fn rref_rational(&self) -> Rref {
        let (echelon, pivots) = bareiss_echelon(self.integer_rows(), self.cols);
        let rank = pivots.len();
        let mut rows: Vec<Vec<BigRational>> = echelon
            .into_iter()
            .take(rank)
            .map(|row| row.into_iter().map(BigRational::from_integer).collect())
            .collect();
        // normalize pivots and clear above, bottom-up
        for k in (0..rank).rev() {
            let pc = pivots[k];
            let inv = rows[k][pc].recip();
            for v in rows[k].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
            let (above, rest) = rows.split_at_mut(k);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                let f = row[pc].clone();
                if f.is_zero() {
                    continue;
                }
                for (x, y) in row.iter_mut().zip(pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        let mut data: Vec<Scalar> = rows.into_iter().flatten().map(Scalar::Rat).collect();
        data.resize(self.rows * self.cols, Field::Rational.zero());
        Rref {
            rank,
            matrix: ExactMatrix {
                rows: self.rows,
                cols: self.cols,
                field: self.field,
                data,
            },
            pivots,
        }
    }

    /// Canonical basis of the right kernel, one vector per free column of the
    /// reduced row echelon form (in increasing column order).
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let Rref { matrix, pivots, .. } = self.rref();
        kernel_from_rref(&matrix, &pivots)
    }

    pub fn invert(&self) -> Result<ExactMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n, self.field);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let r = aug.rref();
        if r.pivots.len() < n || (n > 0 && r.pivots[n - 1] >= n) {
            return Err(Error::SingularMatrix);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(r.matrix.submatrix(&rows, &cols))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// Solves `self * x = rhs`, returning the solution with all free
    /// variables set to zero, or `None` when inconsistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let r = aug.rref();
        if r.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (k, &pc) in r.pivots.iter().enumerate() {
            x[pc] = r.matrix.get(k, self.cols).clone();
        }
        Ok(Some(x))
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub(crate) fn kernel_from_rref(rref: &ExactMatrix, pivots: &[usize]) -> Vec<Vec<Scalar>> {
    let field = rref.field();
    let cols = rref.cols();
    let mut is_pivot = vec![None; cols];
    for (k, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(k);
    }
    (0..cols)
        .filter(|&c| is_pivot[c].is_none())
        .map(|free| {
            let mut v = vec![field.zero(); cols];
            v[free] = field.one();
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = -rref.get(k, free);
            }
            v
        })
        .collect()
}

/// In-place Gauss-Jordan elimination modulo `p`; returns pivot columns.
/// Pivot rows end up first, normalized to 1.
pub(crate) fn gauss_jordan_mod(rows: &mut [Vec<u32>], cols: usize, p: u32) -> Vec<usize> {
    let p64 = p as u64;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = inv_mod(rows[r][c], p) as u64;
        for v in rows[r].iter_mut() {
            *v = (*v as u64 * inv % p64) as u32;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c] as u64;
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                if y != 0 {
                    *x = ((*x as u64 + (p64 - f) * y as u64) % p64) as u32;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Fraction-free forward elimination. Pivot = first nonzero entry in the
/// column at or below the current row. Returns the echelon rows and pivots.
fn bareiss_echelon(mut a: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let n = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(sel) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, sel);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pv = &pivot_row[c];
        for row in tail.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..cols {
                let v = pv * &row[j] - &f * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pv.clone();
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Incrementally maintained row space, for matrices too tall to store.
///
/// Rows are inserted one at a time and reduced against the current echelon
/// basis; only independent rows are kept, so memory is bounded by `cols^2`.
#[derive(Clone, Debug)]
pub struct RowSpace {
    field: Field,
    cols: usize,
    basis: Basis,
}

#[derive(Clone, Debug)]
enum Basis {
    Mod(u32, Vec<(usize, Vec<u32>)>),
    Int(Vec<(usize, Vec<BigInt>)>),
}

impl RowSpace {
    pub fn new(field: Field, cols: usize) -> Self {
        let basis = match field {
            Field::Prime(p) => Basis::Mod(p, Vec::new()),
            Field::Rational => Basis::Int(Vec::new()),
        };
        RowSpace { field, cols, basis }
    }

    pub fn rank(&self) -> usize {
        match &self.basis {
            Basis::Mod(_, b) => b.len(),
            Basis::Int(b) => b.len(),
        }
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.cols
    }

    /// Inserts a sparse row given as `(column, value)` pairs. Returns whether
    /// the row was independent of the rows inserted so far.
    pub fn insert_sparse(&mut self, entries: &[(usize, Scalar)]) -> bool {
        match &mut self.basis {
            Basis::Mod(p, basis) => {
                let p = *p;
                let mut row = vec![0u32; self.cols];
                for (c, v) in entries {
                    row[*c] = ((row[*c] as u64 + v.residue().unwrap() as u64) % p as u64) as u32;
                }
                let p64 = p as u64;
                for (pc, b) in basis.iter() {
                    let f = row[*pc] as u64;
                    if f == 0 {
                        continue;
                    }
                    for (x, &y) in row.iter_mut().zip(b) {
                        if y != 0 {
                            *x = ((*x as u64 + (p64 - f) * y as u64) % p64) as u32;
                        }
                    }
                }
                let Some(pc) = row.iter().position(|&v| v != 0) else {
                    return false;
                };
                let inv = inv_mod(row[pc], p) as u64;
                for v in row.iter_mut() {
                    *v = (*v as u64 * inv % p64) as u32;
                }
                basis.push((pc, row));
                true
            }
            Basis::Int(basis) => {
                let rats: Vec<(usize, BigRational)> = entries
                    .iter()
                    .map(|(c, v)| (*c, v.as_rational().unwrap().clone()))
                    .collect();
                let l = denominator_lcm(rats.iter().map(|(_, q)| q));
                let mut row = vec![BigInt::zero(); self.cols];
                for (c, q) in rats {
                    row[c] += (q * BigRational::from_integer(l.clone())).to_integer();
                }
                for (pc, b) in basis.iter() {
                    if row[*pc].is_zero() {
                        continue;
                    }
                    let f = row[*pc].clone();
                    let g = b[*pc].clone();
                    for (x, y) in row.iter_mut().zip(b) {
                        *x = &*x * &g - &f * y;
                    }
                    primitive(&mut row);
                }
                let Some(pc) = row.iter().position(|v| !v.is_zero()) else {
                    return false;
                };
                primitive(&mut row);
                if row[pc].is_negative() {
                    row.iter_mut().for_each(|v| *v = -&*v);
                }
                basis.push((pc, row));
                true
            }
        }
    }

    /// Echelon basis as a matrix.
    pub fn to_matrix(&self) -> ExactMatrix {
        let rows: Vec<Vec<Scalar>> = match &self.basis {
            Basis::Mod(p, b) => b
                .iter()
                .map(|(_, r)| r.iter().map(|&v| Scalar::Mod { value: v, p: *p }).collect())
                .collect(),
            Basis::Int(b) => b
                .iter()
                .map(|(_, r)| r.iter().map(|v| Field::Rational.from_bigint(v)).collect())
                .collect(),
        };
        if rows.is_empty() {
            return ExactMatrix::zeros(0, self.cols, self.field);
        }
        ExactMatrix::from_rows(self.field, rows).expect("consistent rows")
    }

    /// Canonical kernel basis of the accumulated rows.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let m = self.to_matrix();
        if m.rows() == 0 {
            return (0..self.cols)
                .map(|c| {
                    let mut v = vec![self.field.zero(); self.cols];
                    v[c] = self.field.one();
                    v
                })
                .collect();
        }
        m.kernel_basis()
    }
}

fn primitive(row: &mut [BigInt]) {
    let g = integer_content(row.iter());
    if !g.is_zero() && !g.is_one() {
        row.iter_mut().for_each(|v| *v = &*v / &g);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn rref_identity_gf2() {
        let m = ExactMatrix::identity(2, gf(2));
        let r = m.rref();
        assert_eq!(r.matrix, m);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn rref_proportional_rows_over_q() {
        let q = Field::Rational;
        let m = ExactMatrix::from_i64(q, &[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.matrix, ExactMatrix::from_i64(q, &[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn rref_gf2_hand_elimination() {
        let m = ExactMatrix::from_i64(gf(2), &[&[1, 1], &[1, 0]]);
        let r = m.rref();
        assert_eq!(r.matrix, ExactMatrix::identity(2, gf(2)));
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn rref_rational_fractions() {
        let q = Field::Rational;
        let m = ExactMatrix::from_i64(q, &[&[2, 3, 1], &[4, 1, 0]]);
        let r = m.rref();
        assert_eq!(r.matrix.get(0, 2).to_string(), "-1/10");
        assert_eq!(r.matrix.get(1, 2).to_string(), "2/5");
    }

    #[test]
    fn kernel_examples() {
        let z = ExactMatrix::zeros(1, 2, Field::Rational);
        assert_eq!(z.kernel_basis().len(), 2);
        assert!(ExactMatrix::identity(3, gf(5)).kernel_basis().is_empty());
        let m = ExactMatrix::from_i64(gf(2), &[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k, vec![vec![gf(2).one(), gf(2).one()]]);
    }

    #[test]
    fn invert_examples() {
        let id = ExactMatrix::identity(3, Field::Rational);
        assert_eq!(id.invert().unwrap(), id);
        let two = ExactMatrix::from_i64(Field::Rational, &[&[2]]);
        assert_eq!(two.invert().unwrap().get(0, 0).to_string(), "1/2");
        let u = ExactMatrix::from_i64(gf(2), &[&[1, 1], &[0, 1]]);
        assert_eq!(u.invert().unwrap(), u);
        assert!(u.mul(&u).unwrap().is_identity());
        let s = ExactMatrix::from_i64(Field::Rational, &[&[1, 2], &[2, 4]]);
        assert_eq!(s.invert(), Err(Error::SingularMatrix));
        assert!(ExactMatrix::zeros(2, 3, Field::Rational).invert().is_err());
        assert_eq!(ExactMatrix::zeros(0, 0, Field::Rational).invert().unwrap().rows(), 0);
    }

    #[test]
    fn solve_consistent_and_not() {
        let q = Field::Rational;
        let m = ExactMatrix::from_i64(q, &[&[1, 1], &[2, 2]]);
        let x = m.solve(&[q.from_i64(3), q.from_i64(6)]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![q.from_i64(3), q.from_i64(6)]);
        assert!(m.solve(&[q.from_i64(3), q.from_i64(5)]).unwrap().is_none());
    }

    #[test]
    fn row_space_matches_dense_kernel() {
        for field in [Field::Rational, gf(3)] {
            let m = ExactMatrix::from_i64(field, &[&[1, 2, 0, 1], &[2, 4, 0, 2], &[0, 1, 1, 0]]);
            let mut rs = RowSpace::new(field, 4);
            for i in 0..3 {
                let entries: Vec<_> = m.row(i).iter().cloned().enumerate().collect();
                rs.insert_sparse(&entries);
            }
            assert_eq!(rs.rank(), 2);
            assert_eq!(rs.kernel_basis(), m.kernel_basis());
        }
    }
}
