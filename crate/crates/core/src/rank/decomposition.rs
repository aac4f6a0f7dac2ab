use std::cmp::Ordering;

use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::tensor::{AxisSplit, IndexSubsets, Tensor};

/// One summand `A (x) B` with `A` on the axes of `split` and `B` on the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTerm {
    pub split: AxisSplit,
    pub a: Tensor,
    pub b: Tensor,
}

impl PartitionTerm {
    /// Builds a term from factors on `axes` and on the complement; the split
    /// is canonicalized and the factors swapped if needed.
    pub fn new(order: usize, axes: &[usize], a: Tensor, b: Tensor) -> Result<Self> {
        let (split, flipped) = AxisSplit::canonical(order, axes)?;
        let (a, b) = if flipped { (b, a) } else { (a, b) };
        if a.order() != split.axes().len() || a.field() != b.field() {
            return Err(Error::DimensionMismatch("term factor orders".into()));
        }
        Ok(PartitionTerm { split, a, b })
    }

    pub fn evaluate(&self) -> Tensor {
        Tensor::outer(&self.a, &self.b, self.split.axes()).expect("term shapes checked")
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() || self.b.is_zero()
    }

    /// Scales so that the first nonzero entry of `A` is 1.
    pub fn normalize(&mut self) {
        let Some(lead) = self.a.entries().iter().find(|x| !x.is_zero()).cloned() else {
            return;
        };
        if lead.is_one() {
            return;
        }
        let inv = lead.inv().expect("nonzero");
        self.a = self.a.scale(&inv);
        self.b = self.b.scale(&lead);
    }

    /// Restriction of the term to a subtensor.
    pub fn restrict(&self, subsets: &IndexSubsets) -> Result<PartitionTerm> {
        let sets = subsets.sets();
        let comp = self.split.complement();
        let pick = |axes: &[usize]| {
            IndexSubsets::new(axes.iter().map(|&a| sets[a].clone()).collect::<Vec<_>>())
        };
        Ok(PartitionTerm {
            split: self.split.clone(),
            a: self.a.subtensor(&pick(self.split.axes())?)?,
            b: self.b.subtensor(&pick(&comp)?)?,
        })
    }

    fn cmp_key(&self, other: &Self) -> Ordering {
        self.split
            .cmp(&other.split)
            .then_with(|| self.a.entries().cmp(other.a.entries()))
            .then_with(|| self.b.entries().cmp(other.b.entries()))
    }
}

/// A list of terms whose sum is a tensor of shape `dims`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionDecomposition {
    dims: Vec<usize>,
    field: Field,
    terms: Vec<PartitionTerm>,
}

impl PartitionDecomposition {
    pub fn empty(dims: &[usize], field: Field) -> Self {
        PartitionDecomposition {
            dims: dims.to_vec(),
            field,
            terms: Vec::new(),
        }
    }

    pub fn new(dims: &[usize], field: Field, terms: Vec<PartitionTerm>) -> Result<Self> {
        for t in &terms {
            let ok = t.split.order() == dims.len()
                && t.a.field() == field
                && t.split.axes().iter().zip(t.a.dims()).all(|(&ax, &n)| dims[ax] == n)
                && t.split.complement().iter().zip(t.b.dims()).all(|(&ax, &n)| dims[ax] == n);
            if !ok {
                return Err(Error::DimensionMismatch(format!(
                    "term on {:?} does not fit dims {dims:?}",
                    t.split.axes()
                )));
            }
        }
        Ok(PartitionDecomposition {
            dims: dims.to_vec(),
            field,
            terms,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &[PartitionTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, term: PartitionTerm) {
        self.terms.push(term);
    }

    pub fn extend(&mut self, other: PartitionDecomposition) {
        self.terms.extend(other.terms);
    }

    pub fn evaluate(&self) -> Tensor {
        let mut acc = Tensor::zeros(&self.dims, self.field);
        for t in &self.terms {
            acc = acc.add(&t.evaluate()).expect("shapes checked");
        }
        acc
    }

    pub fn reproduces(&self, t: &Tensor) -> bool {
        t.dims() == self.dims.as_slice() && t.field() == self.field && &self.evaluate() == t
    }

    /// Drops zero terms, normalizes each term and sorts canonically.
    pub fn canonicalize(&mut self) {
        self.terms.retain(|t| !t.is_zero());
        for t in &mut self.terms {
            t.normalize();
        }
        self.terms.sort_by(|x, y| x.cmp_key(y));
    }

    pub fn canonical(mut self) -> Self {
        self.canonicalize();
        self
    }

    /// Term-by-term restriction; the result has at most as many terms.
    pub fn restrict(&self, subsets: &IndexSubsets) -> Result<PartitionDecomposition> {
        let terms = self
            .terms
            .iter()
            .map(|t| t.restrict(subsets))
            .collect::<Result<Vec<_>>>()?;
        let mut d = PartitionDecomposition {
            dims: subsets.sizes(),
            field: self.field,
            terms,
        };
        d.terms.retain(|t| !t.is_zero());
        Ok(d)
    }

    /// Relabels indices as in [`Tensor::permute_indices`].
    pub fn permute_indices(&self, perms: &[Vec<usize>]) -> Result<PartitionDecomposition> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let comp = t.split.complement();
                let pa: Vec<Vec<usize>> = t.split.axes().iter().map(|&a| perms[a].clone()).collect();
                let pb: Vec<Vec<usize>> = comp.iter().map(|&a| perms[a].clone()).collect();
                Ok(PartitionTerm {
                    split: t.split.clone(),
                    a: t.a.permute_indices(&pa)?,
                    b: t.b.permute_indices(&pb)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PartitionDecomposition {
            dims: self.dims.clone(),
            field: self.field,
            terms,
        })
    }

    pub fn is_slice(&self) -> bool {
        self.terms.iter().all(|t| t.split.min_side() == 1)
    }
}
