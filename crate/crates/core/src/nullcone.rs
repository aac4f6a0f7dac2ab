//! Nullcone certificates for order-3 tensors via an explicit
//! one-parameter subgroup, and the order-3 degree bound.

use crate::algebra::{ExactMatrix, Field, Scalar};
use crate::error::{Error, Result};
use crate::rank::PartitionDecomposition;
use crate::tensor::Tensor;

/// Three subspaces of `K^n`, one per axis, each given by a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceTriple {
    pub n: usize,
    pub field: Field,
    pub bases: [Vec<Vec<Scalar>>; 3],
}

impl SubspaceTriple {
    pub fn new(n: usize, field: Field, bases: [Vec<Vec<Scalar>>; 3]) -> Result<Self> {
        for (axis, b) in bases.iter().enumerate() {
            if b.iter().any(|v| v.len() != n) {
                return Err(Error::DimensionMismatch(format!("basis vector of axis {axis} not of length {n}")));
            }
            if !b.is_empty() && ExactMatrix::from_rows(field, b.clone())?.rank() != b.len() {
                return Err(Error::InvalidInput(format!("basis of axis {axis} is dependent")));
            }
        }
        Ok(SubspaceTriple { n, field, bases })
    }

    pub fn empty(n: usize, field: Field) -> Self {
        SubspaceTriple {
            n,
            field,
            bases: [Vec::new(), Vec::new(), Vec::new()],
        }
    }

    pub fn dims(&self) -> [usize; 3] {
        [self.bases[0].len(), self.bases[1].len(), self.bases[2].len()]
    }

    pub fn dim_sum(&self) -> usize {
        self.dims().iter().sum()
    }
}

/// Integer exponent vectors `lambda_i(t) = diag(t^{w_i})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneParamSubgroup {
    pub exponents: [Vec<i64>; 3],
}

impl OneParamSubgroup {
    /// Each exponent vector sums to zero, so every `lambda_i(t)` has
    /// determinant 1.
    pub fn is_special(&self) -> bool {
        self.exponents.iter().all(|w| w.iter().sum::<i64>() == 0)
    }
}

/// `n_i` entries `n - n_i` followed by `n - n_i` entries `-n_i`, per axis.
pub fn build_1psg(n: usize, dims: [usize; 3]) -> Result<OneParamSubgroup> {
    let sum: usize = dims.iter().sum();
    if sum >= n {
        return Err(Error::DimensionSumTooLarge { sum, n });
    }
    let vec_for = |ni: usize| -> Vec<i64> {
        let (hi, lo) = ((n - ni) as i64, -(ni as i64));
        (0..n).map(|k| if k < ni { hi } else { lo }).collect()
    };
    Ok(OneParamSubgroup {
        exponents: [vec_for(dims[0]), vec_for(dims[1]), vec_for(dims[2])],
    })
}

/// Least `w_1[i] + w_2[j] + w_3[k]` over the support of `t`.
pub fn weight_on_support(psg: &OneParamSubgroup, t: &Tensor) -> Result<i64> {
    if t.order() != 3 || (0..3).any(|a| t.dims()[a] != psg.exponents[a].len()) {
        return Err(Error::DimensionMismatch(format!(
            "one-parameter subgroup does not act on dims {:?}",
            t.dims()
        )));
    }
    t.support()
        .map(|(idx, _)| (0..3).map(|a| psg.exponents[a][idx[a]]).sum())
        .min()
        .ok_or(Error::ZeroTensor)
}

/// Basis of `K^n` starting with `basis`, completed by standard vectors.
fn completed_basis(n: usize, field: Field, basis: &[Vec<Scalar>]) -> Result<ExactMatrix> {
    let mut rows: Vec<Vec<Scalar>> = basis.to_vec();
    let mut rank = rows.len();
    for k in 0..n {
        if rank == n {
            break;
        }
        let mut e = vec![field.zero(); n];
        e[k] = field.one();
        let mut trial = rows.clone();
        trial.push(e);
        if ExactMatrix::from_rows(field, trial.clone())?.rank() > rank {
            rows = trial;
            rank += 1;
        }
    }
    // columns are the new basis vectors
    Ok(ExactMatrix::from_rows(field, rows)?.transpose())
}

/// `t` with `m` applied along `axis`.
fn mode_product(t: &Tensor, axis: usize, m: &ExactMatrix) -> Tensor {
    let field = t.field();
    let mut out = Tensor::zeros(t.dims(), field);
    for (idx, v) in t.support() {
        let mut dst = idx.clone();
        for a in 0..m.rows() {
            let c = m.get(a, idx[axis]);
            if c.is_zero() {
                continue;
            }
            dst[axis] = a;
            let cur = out.get(&dst).clone();
            out.set(&dst, &cur + &(c * v));
        }
    }
    out
}

/// `t` in coordinates where each `V_i` is spanned by the first `n_i`
/// basis vectors.
pub fn to_coordinate_form(t: &Tensor, triple: &SubspaceTriple) -> Result<Tensor> {
    if t.order() != 3 || t.dims().iter().any(|&x| x != triple.n) {
        return Err(Error::DimensionMismatch(format!(
            "expected {n}x{n}x{n}, got {:?}",
            t.dims(),
            n = triple.n
        )));
    }
    let mut out = t.to_field(triple.field)?;
    for (axis, basis) in triple.bases.iter().enumerate() {
        let change = completed_basis(triple.n, triple.field, basis)?.invert()?;
        out = mode_product(&out, axis, &change);
    }
    Ok(out)
}

/// True iff `lambda(t) T -> 0` for the subgroup built from the triple.
pub fn certify_nullcone(t: &Tensor, triple: &SubspaceTriple) -> Result<bool> {
    let psg = build_1psg(triple.n, triple.dims())?;
    let coords = to_coordinate_form(t, triple)?;
    let a = weight_on_support(&psg, &coords)?;
    let gap = (triple.n - triple.dim_sum()) as i64;
    Ok(a >= gap && gap > 0)
}

/// `V_i` spanned by the axis-`i` vectors of the slice terms on that axis.
pub fn triple_from_slice_decomposition(dec: &PartitionDecomposition) -> Result<SubspaceTriple> {
    let dims = dec.dims();
    if dims.len() != 3 || dims.iter().any(|&x| x != dims[0]) {
        return Err(Error::DimensionMismatch(format!("expected a cubical order-3 decomposition, got {dims:?}")));
    }
    let field = dec.field();
    let n = dims[0];
    let mut spans: [Vec<Vec<Scalar>>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for term in dec.terms() {
        let axes = term.split.axes();
        let (axis, v) = match axes.len() {
            1 => (axes[0], &term.a),
            2 => (term.split.complement()[0], &term.b),
            _ => return Err(Error::NonSliceTerm(axes.to_vec())),
        };
        spans[axis].push(v.entries().to_vec());
    }
    let bases = spans.map(|vs| {
        if vs.is_empty() {
            return Ok(vs);
        }
        let r = ExactMatrix::from_rows(field, vs)?.rref();
        Ok((0..r.rank).map(|k| r.matrix.row(k).to_vec()).collect())
    });
    let [a, b, c] = bases;
    SubspaceTriple::new(n, field, [a?, b?, c?])
}

/// Smallest `k >= 1` with `k^2 >= r + 1`, and `m = k^3`.
pub fn d3_degree_bound(r: u64) -> Result<(u64, u64)> {
    if r == 0 {
        return Err(Error::InvalidInput("need r >= 1".into()));
    }
    let mut k = (((r + 1) as f64).sqrt() as u64).max(1);
    while k * k < r + 1 {
        k += 1;
    }
    while k > 1 && (k - 1) * (k - 1) > r {
        k -= 1;
    }
    Ok((k, k * k * k))
}
