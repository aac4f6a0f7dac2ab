//! Dense order-d tensors over an exact field.
//!
//! Entries are stored row-major (last axis fastest), which is also the
//! lexicographic order of multi-indices. Indices are 0-based internally;
//! the JSON format uses 1-based indices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{ExactMatrix, Field, Scalar};
use crate::error::{Error, Result};

/// A permutation of `0..n`, stored as its image list.
pub type Permutation = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor {
    dims: Vec<usize>,
    field: Field,
    data: Vec<Scalar>,
}

/// Per-axis index lists `X_1, ..., X_d`, each strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSubsets(Vec<Vec<usize>>);

impl IndexSubsets {
    pub fn new(sets: Vec<Vec<usize>>) -> Result<Self> {
        for (axis, s) in sets.iter().enumerate() {
            if s.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidInput(format!(
                    "index list on axis {axis} is not strictly increasing"
                )));
            }
        }
        Ok(IndexSubsets(sets))
    }

    /// The full index range on every axis.
    pub fn full(dims: &[usize]) -> Self {
        IndexSubsets(dims.iter().map(|&n| (0..n).collect()).collect())
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.0
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.0.iter().map(Vec::len).collect()
    }

    /// `S.compose(S')` selects `S'` inside the subtensor selected by `S`.
    pub fn compose(&self, inner: &IndexSubsets) -> Result<IndexSubsets> {
        if self.0.len() != inner.0.len() {
            return Err(Error::DimensionMismatch("subset orders differ".into()));
        }
        let sets = self
            .0
            .iter()
            .zip(&inner.0)
            .map(|(outer, inn)| {
                inn.iter()
                    .map(|&i| {
                        outer.get(i).copied().ok_or_else(|| {
                            Error::IndexOutOfRange(format!("{i} in subset of size {}", outer.len()))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IndexSubsets(sets))
    }

    /// Complements within the given dims.
    pub fn complement(&self, dims: &[usize]) -> IndexSubsets {
        IndexSubsets(
            self.0
                .iter()
                .zip(dims)
                .map(|(s, &n)| (0..n).filter(|i| !s.contains(i)).collect())
                .collect(),
        )
    }
}

/// A proper nonempty subset of the axes, stored by its representative that
/// contains axis 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AxisSplit {
    order: usize,
    axes: Vec<usize>,
}

impl AxisSplit {
    /// Canonicalizes `axes` (or its complement) to the representative
    /// containing axis 0. Returns the split and whether the complement was
    /// taken.
    pub fn canonical(order: usize, axes: &[usize]) -> Result<(AxisSplit, bool)> {
        let mut a: Vec<usize> = axes.to_vec();
        a.sort_unstable();
        a.dedup();
        if a.is_empty() || a.len() >= order || a.iter().any(|&x| x >= order) {
            return Err(Error::InvalidInput(format!(
                "{axes:?} is not a proper nonempty subset of {order} axes"
            )));
        }
        if a[0] == 0 {
            Ok((AxisSplit { order, axes: a }, false))
        } else {
            let comp = (0..order).filter(|x| !a.contains(x)).collect();
            Ok((AxisSplit { order, axes: comp }, true))
        }
    }

    pub fn new(order: usize, axes: &[usize]) -> Result<AxisSplit> {
        Self::canonical(order, axes).map(|(s, _)| s)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn axes(&self) -> &[usize] {
        &self.axes
    }

    pub fn complement(&self) -> Vec<usize> {
        (0..self.order).filter(|x| !self.axes.contains(x)).collect()
    }

    /// Size of the smaller side; 1 means a slice split.
    pub fn min_side(&self) -> usize {
        self.axes.len().min(self.order - self.axes.len())
    }

    /// All splits of `order` axes, singletons first, then by size of the
    /// smaller side, ties broken lexicographically.
    pub fn all(order: usize) -> Vec<AxisSplit> {
        let mut out: Vec<AxisSplit> = (0u64..1 << (order - 1))
            .map(|mask| {
                let mut axes = vec![0];
                axes.extend((1..order).filter(|i| mask >> (i - 1) & 1 == 1));
                axes
            })
            .filter(|a| a.len() < order)
            .map(|axes| AxisSplit { order, axes })
            .collect();
        out.sort_by(|a, b| a.min_side().cmp(&b.min_side()).then(a.axes.cmp(&b.axes)));
        out
    }

    /// The slice splits `{i}` for every axis, in axis order.
    pub fn slices(order: usize) -> Vec<AxisSplit> {
        (0..order)
            .map(|i| AxisSplit::new(order, &[i]).expect("order >= 2"))
            .collect()
    }
}

/// Iterates multi-indices in lexicographic order.
pub(crate) struct MultiIndex {
    dims: Vec<usize>,
    cur: Vec<usize>,
    done: bool,
}

impl MultiIndex {
    pub(crate) fn new(dims: &[usize]) -> Self {
        MultiIndex {
            dims: dims.to_vec(),
            cur: vec![0; dims.len()],
            done: dims.contains(&0),
        }
    }
}

impl Iterator for MultiIndex {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let mut i = self.dims.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.cur[i] += 1;
            if self.cur[i] < self.dims[i] {
                break;
            }
            self.cur[i] = 0;
        }
        Some(out)
    }
}

impl Tensor {
    pub fn zeros(dims: &[usize], field: Field) -> Self {
        assert!(!dims.is_empty(), "tensor order must be positive");
        let len = dims.iter().product();
        Tensor {
            dims: dims.to_vec(),
            field,
            data: vec![field.zero(); len],
        }
    }

    pub fn from_vec(dims: &[usize], field: Field, data: Vec<Scalar>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidInput(format!("bad dims {dims:?}")));
        }
        if data.len() != dims.iter().product::<usize>() {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for dims {dims:?}",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(format!("entry {bad} not in {field}")));
        }
        Ok(Tensor {
            dims: dims.to_vec(),
            field,
            data,
        })
    }

    pub fn from_fn(dims: &[usize], field: Field, mut f: impl FnMut(&[usize]) -> Scalar) -> Self {
        let data = MultiIndex::new(dims).map(|idx| f(&idx)).collect();
        Tensor {
            dims: dims.to_vec(),
            field,
            data,
        }
    }

    /// Order-1 tensor.
    pub fn vector(field: Field, entries: Vec<Scalar>) -> Result<Self> {
        let n = entries.len();
        Self::from_vec(&[n], field, entries)
    }

    /// Order-2 tensor from a matrix.
    pub fn from_matrix(m: &ExactMatrix) -> Self {
        Tensor {
            dims: vec![m.rows(), m.cols()],
            field: m.field(),
            data: m.entries().to_vec(),
        }
    }

    /// Order-2 tensor from small integers.
    pub fn from_i64_matrix(field: Field, rows: &[&[i64]]) -> Self {
        Self::from_matrix(&ExactMatrix::from_i64(field, rows))
    }

    /// Tensor with the listed nonzero entries, given as 0-based indices.
    pub fn from_entries(dims: &[usize], field: Field, entries: &[(&[usize], i64)]) -> Result<Self> {
        let mut t = Tensor::zeros(dims, field);
        for (idx, v) in entries {
            t.check_index(idx)?;
            let o = t.offset(idx);
            t.data[o] = field.from_i64(*v);
        }
        Ok(t)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_cubical(&self) -> bool {
        self.dims.windows(2).all(|w| w[0] == w[1])
    }

    fn check_index(&self, idx: &[usize]) -> Result<()> {
        if idx.len() != self.order() || idx.iter().zip(&self.dims).any(|(i, n)| i >= n) {
            return Err(Error::IndexOutOfRange(format!(
                "{idx:?} for dims {:?}",
                self.dims
            )));
        }
        Ok(())
    }

    pub fn offset(&self, idx: &[usize]) -> usize {
        let mut o = 0;
        for (i, n) in idx.iter().zip(&self.dims) {
            o = o * n + i;
        }
        o
    }

    pub fn unravel(&self, mut offset: usize) -> Vec<usize> {
        let mut idx = vec![0; self.order()];
        for a in (0..self.order()).rev() {
            idx[a] = offset % self.dims[a];
            offset /= self.dims[a];
        }
        idx
    }

    pub fn get(&self, idx: &[usize]) -> &Scalar {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: Scalar) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    /// Nonzero entries as (index, value) in lexicographic order.
    pub fn support(&self) -> impl Iterator<Item = (Vec<usize>, &Scalar)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(o, v)| (self.unravel(o), v))
    }

    fn check_same_shape(&self, other: &Tensor) -> Result<()> {
        if self.dims != other.dims || self.field != other.field {
            return Err(Error::DimensionMismatch(format!(
                "{:?}/{} vs {:?}/{}",
                self.dims, self.field, other.dims, other.field
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Tensor {
            dims: self.dims.clone(),
            field: self.field,
            data,
        })
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Tensor {
            dims: self.dims.clone(),
            field: self.field,
            data,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        Tensor {
            dims: self.dims.clone(),
            field: self.field,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Outer product with `a` on the axes `a_axes` (sorted) and `b` on the
    /// remaining axes.
    pub fn outer(a: &Tensor, b: &Tensor, a_axes: &[usize]) -> Result<Tensor> {
        if a.field != b.field {
            return Err(Error::FieldMismatch("outer product factors".into()));
        }
        let order = a.order() + b.order();
        if a_axes.len() != a.order() || a_axes.iter().any(|&x| x >= order) {
            return Err(Error::DimensionMismatch(format!(
                "axes {a_axes:?} for an order-{} factor",
                a.order()
            )));
        }
        let b_axes: Vec<usize> = (0..order).filter(|x| !a_axes.contains(x)).collect();
        let mut dims = vec![0; order];
        for (k, &ax) in a_axes.iter().enumerate() {
            dims[ax] = a.dims[k];
        }
        for (k, &ax) in b_axes.iter().enumerate() {
            dims[ax] = b.dims[k];
        }
        let mut ia = vec![0; a_axes.len()];
        let mut ib = vec![0; b_axes.len()];
        Ok(Tensor::from_fn(&dims, a.field, |idx| {
            for (k, &ax) in a_axes.iter().enumerate() {
                ia[k] = idx[ax];
            }
            for (k, &ax) in b_axes.iter().enumerate() {
                ib[k] = idx[ax];
            }
            let x = a.get(&ia);
            if x.is_zero() {
                return a.field.zero();
            }
            x * b.get(&ib)
        }))
    }

    /// Restriction to `X_1 x ... x X_d`.
    pub fn subtensor(&self, subsets: &IndexSubsets) -> Result<Tensor> {
        let sets = subsets.sets();
        if sets.len() != self.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} subsets for an order-{} tensor",
                sets.len(),
                self.order()
            )));
        }
        for (axis, (s, &n)) in sets.iter().zip(&self.dims).enumerate() {
            if let Some(&bad) = s.iter().find(|&&i| i >= n) {
                return Err(Error::IndexOutOfRange(format!("index {bad} on axis {axis}")));
            }
            if s.is_empty() {
                return Err(Error::InvalidInput(format!("empty subset on axis {axis}")));
            }
        }
        let dims: Vec<usize> = sets.iter().map(Vec::len).collect();
        let mut src = vec![0; self.order()];
        Ok(Tensor::from_fn(&dims, self.field, |idx| {
            for (a, &i) in idx.iter().enumerate() {
                src[a] = sets[a][i];
            }
            self.get(&src).clone()
        }))
    }

    /// Matrix with rows indexed by the axes of `split` and columns by the
    /// complementary axes, both in lexicographic order.
    pub fn flatten(&self, split: &AxisSplit) -> ExactMatrix {
        self.flatten_axes(split.axes())
    }

    pub(crate) fn flatten_axes(&self, row_axes: &[usize]) -> ExactMatrix {
        let col_axes: Vec<usize> = (0..self.order()).filter(|a| !row_axes.contains(a)).collect();
        let rdims: Vec<usize> = row_axes.iter().map(|&a| self.dims[a]).collect();
        let cdims: Vec<usize> = col_axes.iter().map(|&a| self.dims[a]).collect();
        let rows: usize = rdims.iter().product();
        let cols: usize = cdims.iter().product();
        let mut m = ExactMatrix::zeros(rows, cols, self.field);
        let mut idx = vec![0; self.order()];
        for (r, ri) in MultiIndex::new(&rdims).enumerate() {
            for (k, &a) in row_axes.iter().enumerate() {
                idx[a] = ri[k];
            }
            for (c, ci) in MultiIndex::new(&cdims).enumerate() {
                for (k, &a) in col_axes.iter().enumerate() {
                    idx[a] = ci[k];
                }
                let v = self.get(&idx);
                if !v.is_zero() {
                    m.set(r, c, v.clone());
                }
            }
        }
        m
    }

    /// `result(x_1..x_d) = T(s_1^{-1} x_1, ..., s_d^{-1} x_d)`.
    pub fn permute_indices(&self, perms: &[Permutation]) -> Result<Tensor> {
        if perms.len() != self.order() {
            return Err(Error::DimensionMismatch("one permutation per axis".into()));
        }
        for (axis, (p, &n)) in perms.iter().zip(&self.dims).enumerate() {
            let mut seen = vec![false; n];
            if p.len() != n || p.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::InvalidInput(format!("not a permutation on axis {axis}")));
            }
        }
        let mut out = Tensor::zeros(&self.dims, self.field);
        let mut dst = vec![0; self.order()];
        for (o, v) in self.data.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let idx = self.unravel(o);
            for a in 0..self.order() {
                dst[a] = perms[a][idx[a]];
            }
            out.set(&dst, v.clone());
        }
        Ok(out)
    }

    /// Axis `a` of the result is axis `axes[a]` of `self`.
    pub fn permute_axes(&self, axes: &[usize]) -> Result<Tensor> {
        let mut seen = vec![false; self.order()];
        if axes.len() != self.order()
            || axes.iter().any(|&a| a >= self.order() || std::mem::replace(&mut seen[a], true))
        {
            return Err(Error::InvalidInput(format!("{axes:?} is not an axis permutation")));
        }
        let dims: Vec<usize> = axes.iter().map(|&a| self.dims[a]).collect();
        let mut src = vec![0; self.order()];
        Ok(Tensor::from_fn(&dims, self.field, |idx| {
            for (k, &a) in axes.iter().enumerate() {
                src[a] = idx[k];
            }
            self.get(&src).clone()
        }))
    }

    /// Seeded random tensor: each entry is nonzero with probability
    /// `density`; nonzero values are uniform over the nonzero residues, or
    /// uniform in `[-5, 5] \ {0}` over the rationals.
    pub fn random(dims: &[usize], field: Field, seed: u64, density: f64) -> Result<Tensor> {
        if !(0.0..=1.0).contains(&density) {
            return Err(Error::InvalidInput(format!("density {density} not in [0,1]")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(Self::random_with(dims, field, &mut rng, density))
    }

    pub fn random_with(dims: &[usize], field: Field, rng: &mut impl Rng, density: f64) -> Tensor {
        Tensor::from_fn(dims, field, |_| {
            if !rng.random_bool(density) {
                return field.zero();
            }
            match field {
                Field::Prime(p) => field.from_u32(rng.random_range(1..p)),
                Field::Rational => {
                    let v: i64 = rng.random_range(1..=5);
                    field.from_i64(if rng.random_bool(0.5) { v } else { -v })
                }
            }
        })
    }

    /// Map every entry into another field; used to reduce integer tensors.
    pub fn to_field(&self, field: Field) -> Result<Tensor> {
        let data = self
            .data
            .iter()
            .map(|v| v.to_field(field))
            .collect::<Result<Vec<_>>>()?;
        Ok(Tensor {
            dims: self.dims.clone(),
            field,
            data,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Field {
        Field::Prime(2)
    }

    fn diag3() -> Tensor {
        Tensor::from_entries(&[2, 2, 2], gf2(), &[(&[0, 0, 0], 1), (&[1, 1, 1], 1)]).unwrap()
    }

    #[test]
    fn subtensor_examples() {
        let t = diag3();
        assert_eq!(t.subtensor(&IndexSubsets::full(t.dims())).unwrap(), t);
        let id = Tensor::from_i64_matrix(gf2(), &[&[1, 0], &[0, 1]]);
        let s = IndexSubsets::new(vec![vec![0], vec![0]]).unwrap();
        assert_eq!(id.subtensor(&s).unwrap().entries(), &[gf2().one()]);
        let s = IndexSubsets::new(vec![vec![0], vec![0], vec![0]]).unwrap();
        let sub = t.subtensor(&s).unwrap();
        assert_eq!(sub.dims(), &[1, 1, 1]);
        assert!(sub.entries()[0].is_one());
        let bad = IndexSubsets::new(vec![vec![2], vec![0]]).unwrap();
        assert!(matches!(id.subtensor(&bad), Err(Error::IndexOutOfRange(_))));
        assert!(IndexSubsets::new(vec![vec![1, 0]]).is_err());
    }

    #[test]
    fn flatten_examples() {
        let m = Tensor::from_i64_matrix(Field::Rational, &[&[1, 2], &[3, 4]]);
        let f = m.flatten(&AxisSplit::new(2, &[0]).unwrap());
        assert_eq!(f, ExactMatrix::from_i64(Field::Rational, &[&[1, 2], &[3, 4]]));
        let f = diag3().flatten(&AxisSplit::new(3, &[0]).unwrap());
        assert_eq!((f.rows(), f.cols()), (2, 4));
        assert_eq!(f.rank(), 2);
        let a = Tensor::vector(gf2(), vec![gf2().one(), gf2().one()]).unwrap();
        let b = Tensor::from_i64_matrix(gf2(), &[&[1, 0], &[1, 1]]);
        let t = Tensor::outer(&a, &b, &[0]).unwrap();
        assert_eq!(t.flatten(&AxisSplit::new(3, &[0]).unwrap()).rank(), 1);
    }

    #[test]
    fn permute_examples() {
        let m = Tensor::from_i64_matrix(Field::Rational, &[&[1, 0], &[0, 0]]);
        let id = vec![vec![0, 1], vec![0, 1]];
        assert_eq!(m.permute_indices(&id).unwrap(), m);
        let swapped = m.permute_indices(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(swapped, Tensor::from_i64_matrix(Field::Rational, &[&[0, 0], &[1, 0]]));
        assert!(m.permute_indices(&[vec![0, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn random_examples() {
        let f = Field::Prime(5);
        assert!(Tensor::random(&[3, 3], f, 1, 0.0).unwrap().is_zero());
        assert_eq!(
            Tensor::random(&[3, 3, 2], f, 9, 0.5).unwrap(),
            Tensor::random(&[3, 3, 2], f, 9, 0.5).unwrap()
        );
        let ones = Tensor::random(&[2, 2], gf2(), 4, 1.0).unwrap();
        assert!(ones.entries().iter().all(Scalar::is_one));
        assert!(Tensor::random(&[2], f, 0, 1.5).is_err());
    }

    #[test]
    fn splits_are_canonical() {
        let (s, flipped) = AxisSplit::canonical(3, &[1, 2]).unwrap();
        assert_eq!(s.axes(), &[0]);
        assert!(flipped);
        assert!(AxisSplit::new(3, &[0, 1, 2]).is_err());
        assert!(AxisSplit::new(3, &[]).is_err());
        let all: Vec<Vec<usize>> = AxisSplit::all(4).iter().map(|s| s.axes().to_vec()).collect();
        assert_eq!(
            all,
            vec![
                vec![0],
                vec![0, 1, 2],
                vec![0, 1, 3],
                vec![0, 2, 3],
                vec![0, 1],
                vec![0, 2],
                vec![0, 3]
            ]
        );
    }

    #[test]
    fn compose_subsets() {
        let outer = IndexSubsets::new(vec![vec![1, 3, 4], vec![0, 2]]).unwrap();
        let inner = IndexSubsets::new(vec![vec![0, 2], vec![1]]).unwrap();
        assert_eq!(outer.compose(&inner).unwrap().sets(), &[vec![1, 4], vec![2]]);
    }
}
