//! The nested chain `h_k = x_{c..c} h_{k+1} + r_{k+1}` (`c = m - k - 1`,
//! 0-based) of a multilinear polynomial, orbit checks, and the explicit
//! decomposition of a tensor on which the orbit of `h_k` vanishes but the
//! orbit of `h_{k+1}` does not.

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::counting::bound_formula;
use super::poly::{Monomial, Poly, Var, VarSpace};
use super::weight::weight_of;
use crate::error::{Error, Result};
use crate::rank::{PartitionDecomposition, PartitionTerm};
use crate::tensor::Tensor;

/// Per-axis injection `[m'] -> [n_a]`.
pub type Injection = Vec<Vec<usize>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HChain {
    pub m: usize,
    pub order: usize,
    /// `h[k]` lives on `(m-k)^d` variables; `h[m]` is a nonzero constant.
    pub h: Vec<Poly>,
    /// `r[k]` is `r_{k+1}` and lives on `(m-k)^d` variables.
    pub r: Vec<Poly>,
    /// Per-axis permutations of `[m]` applied while extracting level `k`.
    pub perms: Vec<Vec<Vec<usize>>>,
}

fn diag(order: usize, c: usize) -> Var {
    vec![c; order]
}

fn transposition(m: usize, a: usize, b: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..m).collect();
    p.swap(a, b);
    p
}

/// Extracts the chain of a nonzero polynomial of weight `(1^m, ..., 1^m)`.
pub fn extract_hchain(f: &Poly) -> Result<HChain> {
    let VarSpace::Tensor(dims) = f.space() else {
        return Err(Error::InvalidInput("expected tensor-entry variables".into()));
    };
    let order = dims.len();
    let m = f.degree() as usize;
    let w = weight_of(f)?;
    if f.is_zero() || dims.iter().any(|&n| n != m) || w.0.iter().any(|a| a.iter().any(|&x| x != 1)) {
        return Err(Error::InvalidInput(
            "chain extraction needs a nonzero polynomial of weight (1^m, ..., 1^m)".into(),
        ));
    }
    let mut h = vec![f.clone()];
    let mut r: Vec<Poly> = Vec::new();
    let mut perms = Vec::new();
    for k in 0..m {
        let c = m - k - 1;
        let x = diag(order, c);
        let mut level: Vec<Vec<usize>> = (0..order).map(|_| (0..m).collect()).collect();
        if !h[k].terms().any(|(mono, _)| mono.exponent(&x) > 0) {
            let (first, _) = h[k].terms().next().expect("nonzero");
            let v = first
                .powers()
                .iter()
                .map(|(v, _)| v)
                .find(|v| v[0] == c)
                .expect("weight 1 at index c on the first axis")
                .clone();
            for (a, slot) in level.iter_mut().enumerate().skip(1) {
                *slot = transposition(m, v[a], c);
            }
            for p in h.iter_mut().chain(r.iter_mut()) {
                *p = p.permute_indices(&level);
            }
        }
        perms.push(level);
        let mut next = Poly::zero(VarSpace::Tensor(vec![c; order]), f.field(), (c) as u32);
        let mut rest = Poly::zero(VarSpace::Tensor(vec![c + 1; order]), f.field(), (c + 1) as u32);
        for (mono, coef) in h[k].terms() {
            match mono.div_var(&x) {
                Some(q) => next.add_term(q, coef.clone()),
                None => rest.add_term(mono.clone(), coef.clone()),
            }
        }
        debug_assert!(!next.is_zero());
        h.push(next);
        r.push(rest);
    }
    Ok(HChain {
        m,
        order,
        h,
        r,
        perms,
    })
}

impl HChain {
    /// Checks `h_k = x_{c..c} h_{k+1} + r_{k+1}` symbolically at every level.
    pub fn verify(&self) -> bool {
        (0..self.m).all(|k| {
            let c = self.m - k - 1;
            let space = VarSpace::Tensor(vec![c + 1; self.order]);
            let x = Poly::from_terms(
                space.clone(),
                self.h[k].field(),
                1,
                [(Monomial::var(diag(self.order, c)), self.h[k].field().one())],
            )
            .expect("diagonal variable");
            let Ok(lifted) = self.h[k + 1].with_space(space.clone()) else {
                return false;
            };
            let rebuilt = x.mul(&lifted).and_then(|p| p.add(&self.r[k]));
            matches!(rebuilt, Ok(p) if p.with_space(space.clone()).ok() == Some(self.h[k].clone()))
        }) && self.h[self.m].degree() == 0
            && !self.h[self.m].is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitResult {
    pub vanishes: bool,
    /// First (lexicographic) injection with a nonzero value.
    pub witness: Option<Injection>,
    pub checked: u64,
    /// True when only a random sample of injections was checked.
    pub heuristic: bool,
}

pub const DEFAULT_ORBIT_BUDGET: u64 = 10_000_000;

fn cubical_size(h: &Poly) -> Result<(usize, usize)> {
    match h.space() {
        VarSpace::Tensor(dims) if dims.windows(2).all(|w| w[0] == w[1]) => {
            Ok((dims.len(), dims[0]))
        }
        _ => Err(Error::InvalidInput("expected a cubical tensor-variable space".into())),
    }
}

fn falling(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul((n - i) as u64))
}

/// Ordered `k`-tuples of distinct elements of `[n]`, lexicographic.
fn injections(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    let mut used = vec![false; n];
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(n, k, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(n, k, &mut cur, &mut used, &mut out);
    out
}

/// Whether `h` vanishes at every injective placement of its indices into
/// the index ranges of `t`.
pub fn orbit_vanishes(h: &Poly, t: &Tensor, budget: u64) -> Result<OrbitResult> {
    let (order, mp) = cubical_size(h)?;
    if order != t.order() || t.dims().iter().any(|&n| n < mp) {
        return Err(Error::DimensionMismatch(format!(
            "orbit of a polynomial on {mp}^{order} variables at dims {:?}",
            t.dims()
        )));
    }
    let total = t
        .dims()
        .iter()
        .fold(1u64, |acc, &n| acc.saturating_mul(falling(n, mp)));
    if total > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    let h = h.to_field(t.field())?;
    let per_axis: Vec<Vec<Vec<usize>>> = t.dims().iter().map(|&n| injections(n, mp)).collect();
    let mut pick = vec![0usize; order];
    let mut checked = 0;
    loop {
        let inj: Injection = (0..order).map(|a| per_axis[a][pick[a]].clone()).collect();
        checked += 1;
        if !h.eval_tensor(t, &inj)?.is_zero() {
            return Ok(OrbitResult {
                vanishes: false,
                witness: Some(inj),
                checked,
                heuristic: false,
            });
        }
        let mut a = order;
        loop {
            if a == 0 {
                return Ok(OrbitResult {
                    vanishes: true,
                    witness: None,
                    checked,
                    heuristic: false,
                });
            }
            a -= 1;
            pick[a] += 1;
            if pick[a] < per_axis[a].len() {
                break;
            }
            pick[a] = 0;
        }
    }
}

/// Checks `samples` seeded random injections only; a `true` answer is
/// flagged heuristic.
pub fn orbit_vanishes_sampled(h: &Poly, t: &Tensor, samples: usize, seed: u64) -> Result<OrbitResult> {
    let (order, mp) = cubical_size(h)?;
    if order != t.order() || t.dims().iter().any(|&n| n < mp) {
        return Err(Error::DimensionMismatch("orbit placement".into()));
    }
    let h = h.to_field(t.field())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in 0..samples {
        let inj: Injection = t
            .dims()
            .iter()
            .map(|&n| sample(&mut rng, n, mp).into_vec())
            .collect();
        if !h.eval_tensor(t, &inj)?.is_zero() {
            return Ok(OrbitResult {
                vanishes: false,
                witness: Some(inj),
                checked: s as u64 + 1,
                heuristic: false,
            });
        }
    }
    Ok(OrbitResult {
        vanishes: true,
        witness: None,
        checked: samples as u64,
        heuristic: true,
    })
}

/// Largest `k` whose orbit of `h_k` vanishes at `t`, with a nonvanishing
/// placement of `h_{k+1}`.
pub fn find_k(t: &Tensor, chain: &HChain, budget: u64) -> Result<(usize, Injection)> {
    let m = chain.m;
    let mut witness: Injection = vec![Vec::new(); chain.order];
    for k in (0..m).rev() {
        let res = orbit_vanishes(&chain.h[k], t, budget)?;
        if res.vanishes {
            return Ok((k, witness));
        }
        witness = res.witness.expect("nonvanishing orbit has a witness");
    }
    Err(Error::HypothesisViolated(
        "the orbit of the chain's top polynomial does not vanish at the tensor".into(),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainDecomposition {
    pub k: usize,
    pub decomposition: PartitionDecomposition,
    pub bound: usize,
    pub outer_terms: usize,
    pub slice_terms: usize,
}

/// Key of a grouped monomial: the chosen part's axes and the fixed indices
/// on the remaining axes.
type GroupKey = (usize, Vec<usize>, Vec<usize>);

/// Builds an explicit decomposition of `t` from the chain, of length at most
/// `bound_formula(d, m, k)`.
pub fn decompose_via_chain(t: &Tensor, chain: &HChain, budget: u64) -> Result<ChainDecomposition> {
    let d = chain.order;
    let m = chain.m;
    let field = t.field();
    if t.order() != d || t.dims().iter().any(|&n| n < m) {
        return Err(Error::DimensionMismatch(format!(
            "chain of degree {m} on order {d} needs dims >= {m}, got {:?}",
            t.dims()
        )));
    }
    if chain.h[0].field() != field {
        return Err(Error::FieldMismatch("chain and tensor fields differ".into()));
    }
    let (k, wit) = find_k(t, chain, budget)?;
    let q = m - k - 1;
    let bound = bound_formula(d as u32, m as u64, k as u64)?
        .try_into()
        .map_err(|_| Error::InvalidInput("bound does not fit".into()))?;

    // relabel so the witness placement becomes the identity on [q]
    let relabel: Vec<Vec<usize>> = t
        .dims()
        .iter()
        .zip(&wit)
        .map(|(&n, w)| {
            let mut p = vec![usize::MAX; n];
            for (j, &x) in w.iter().enumerate() {
                p[x] = j;
            }
            let mut next = q;
            for slot in p.iter_mut().filter(|s| **s == usize::MAX) {
                *slot = next;
                next += 1;
            }
            p
        })
        .collect();
    let inverse: Vec<Vec<usize>> = relabel
        .iter()
        .map(|p| {
            let mut inv = vec![0; p.len()];
            for (i, &x) in p.iter().enumerate() {
                inv[x] = i;
            }
            inv
        })
        .collect();
    let tp = t.permute_indices(&relabel)?;

    let hv = chain.h[k + 1].eval_at(&tp)?;
    let scale = (-&hv).inv().ok_or(Error::ChainEvaluationZero)?;
    let rr = &chain.r[k];

    let dims = tp.dims().to_vec();
    let mut groups: BTreeMap<GroupKey, Tensor> = BTreeMap::new();
    for (mono, coef) in rr.terms() {
        let mut inner = coef.clone();
        // parts: (axes carrying q, fixed indices on the other axes)
        let mut parts: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for v in mono.factors() {
            let axes: Vec<usize> = (0..d).filter(|&a| v[a] == q).collect();
            if axes.is_empty() {
                inner = &inner * tp.get(v);
            } else {
                let fixed = (0..d).filter(|a| !axes.contains(a)).map(|a| v[a]).collect();
                parts.push((axes, fixed));
            }
        }
        if inner.is_zero() {
            continue;
        }
        let coef = &inner * &scale;
        let key_at = (0..parts.len())
            .min_by(|&x, &y| {
                let (a, b) = (&parts[x], &parts[y]);
                (a.0.len(), &a.0, &a.1).cmp(&(b.0.len(), &b.0, &b.1))
            })
            .expect("every term of r carries the index");
        let (s_axes, s_fixed) = parts[key_at].clone();
        let others: Vec<usize> = (0..d).filter(|a| !s_axes.contains(a)).collect();
        let odims: Vec<usize> = others.iter().map(|&a| dims[a]).collect();
        let contribution = Tensor::from_fn(&odims, field, |oidx| {
            if oidx.iter().any(|&i| i < q) {
                return field.zero();
            }
            let mut full = vec![0; d];
            for (pos, &a) in others.iter().enumerate() {
                full[a] = oidx[pos];
            }
            let mut val = coef.clone();
            for (pi, (p_axes, p_fixed)) in parts.iter().enumerate() {
                if pi == key_at {
                    continue;
                }
                let mut idx = vec![0; d];
                let mut fi = p_fixed.iter();
                for a in 0..d {
                    idx[a] = if p_axes.contains(&a) { full[a] } else { *fi.next().unwrap() };
                }
                val = &val * tp.get(&idx);
                if val.is_zero() {
                    break;
                }
            }
            val
        });
        let key = (s_axes.len(), s_axes, s_fixed);
        match groups.get_mut(&key) {
            Some(acc) => *acc = acc.add(&contribution)?,
            None => {
                groups.insert(key, contribution);
            }
        }
    }

    let mut dec = PartitionDecomposition::empty(&dims, field);
    let mut outer_terms = 0;
    for ((_, s_axes, s_fixed), b) in groups {
        if b.is_zero() {
            continue;
        }
        let sdims: Vec<usize> = s_axes.iter().map(|&a| dims[a]).collect();
        let a_t = Tensor::from_fn(&sdims, field, |sidx| {
            if sidx.iter().any(|&i| i < q) {
                return field.zero();
            }
            let mut idx = vec![0; d];
            let mut fi = s_fixed.iter();
            let mut si = sidx.iter();
            for a in 0..d {
                idx[a] = if s_axes.contains(&a) { *si.next().unwrap() } else { *fi.next().unwrap() };
            }
            tp.get(&idx).clone()
        });
        if a_t.is_zero() {
            continue;
        }
        dec.push(PartitionTerm::new(d, &s_axes, a_t, b)?);
        outer_terms += 1;
    }

    // entries with some index below q, filed under the first such axis
    let mut slices: BTreeMap<(usize, usize), Tensor> = BTreeMap::new();
    for (idx, v) in tp.support() {
        let Some(a) = (0..d).find(|&a| idx[a] < q) else {
            continue;
        };
        let rest: Vec<usize> = (0..d).filter(|&x| x != a).collect();
        let ridx: Vec<usize> = rest.iter().map(|&x| idx[x]).collect();
        let slot = slices.entry((a, idx[a])).or_insert_with(|| {
            Tensor::zeros(&rest.iter().map(|&x| dims[x]).collect::<Vec<_>>(), field)
        });
        slot.set(&ridx, v.clone());
    }
    let slice_terms = slices.len();
    for ((a, j), b) in slices {
        let mut e = Tensor::zeros(&[dims[a]], field);
        e.set(&[j], field.one());
        dec.push(PartitionTerm::new(d, &[a], e, b)?);
    }

    let decomposition = dec.permute_indices(&inverse)?.canonical();
    Ok(ChainDecomposition {
        k,
        decomposition,
        bound,
        outer_terms,
        slice_terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn det(field: Field) -> Poly {
        Poly::from_i64(
            VarSpace::Tensor(vec![2, 2]),
            field,
            &[(&[&[0, 0], &[1, 1]], 1), (&[&[0, 1], &[1, 0]], -1)],
        )
        .unwrap()
    }

    fn var(field: Field, dims: &[usize], terms: &[(&[&[usize]], i64)]) -> Poly {
        Poly::from_i64(VarSpace::Tensor(dims.to_vec()), field, terms).unwrap()
    }

    #[test]
    fn determinant_chain() {
        let q = Field::Rational;
        let c = extract_hchain(&det(q)).unwrap();
        assert_eq!(c.h[1], var(q, &[1, 1], &[(&[&[0, 0]], 1)]));
        assert_eq!(c.r[0], var(q, &[2, 2], &[(&[&[0, 1], &[1, 0]], -1)]));
        assert_eq!(c.h[2], Poly::constant(VarSpace::Tensor(vec![0, 0]), q.one()));
        assert!(c.verify());
    }

    #[test]
    fn small_chains() {
        let q = Field::Rational;
        let x = var(q, &[1, 1], &[(&[&[0, 0]], 1)]);
        let c = extract_hchain(&x).unwrap();
        assert!(c.h[1].degree() == 0 && c.h[1].len() == 1 && c.r[0].is_zero());
        let perm = var(q, &[2, 2], &[(&[&[0, 0], &[1, 1]], 1), (&[&[0, 1], &[1, 0]], 1)]);
        let c = extract_hchain(&perm).unwrap();
        assert_eq!(c.r[0], var(q, &[2, 2], &[(&[&[0, 1], &[1, 0]], 1)]));
        assert!(c.verify());
    }

    #[test]
    fn chain_needs_permutation() {
        // x_{12} x_{21} x_{33} style term without the top diagonal variable
        let q = Field::Rational;
        let f = var(q, &[2, 2], &[(&[&[0, 1], &[1, 0]], 1)]);
        let c = extract_hchain(&f).unwrap();
        assert!(c.verify());
        assert_ne!(c.perms[0][1], vec![0, 1]);
    }

    #[test]
    fn orbit_examples() {
        let f = Field::Prime(5);
        let x = var(f, &[1, 1], &[(&[&[0, 0]], 1)]);
        let z = Tensor::zeros(&[2, 2], f);
        assert!(orbit_vanishes(&x, &z, DEFAULT_ORBIT_BUDGET).unwrap().vanishes);
        let t = Tensor::from_entries(&[2, 3], f, &[(&[1, 2], 3)]).unwrap();
        let r = orbit_vanishes(&x, &t, DEFAULT_ORBIT_BUDGET).unwrap();
        assert_eq!(r.witness, Some(vec![vec![1], vec![2]]));
        let u = Tensor::vector(f, [1, 2, 3].map(|v| f.from_i64(v)).to_vec()).unwrap();
        let rk1 = Tensor::outer(&u, &u, &[0]).unwrap();
        assert!(orbit_vanishes(&det(f), &rk1, DEFAULT_ORBIT_BUDGET).unwrap().vanishes);
        assert!(matches!(
            orbit_vanishes(&det(f), &rk1, 3),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn find_k_examples() {
        let f = Field::Prime(5);
        let c = extract_hchain(&det(f)).unwrap();
        let a = Tensor::from_i64_matrix(f, &[&[1, 2], &[2, 4]]);
        let (k, w) = find_k(&a, &c, DEFAULT_ORBIT_BUDGET).unwrap();
        assert_eq!((k, w), (0, vec![vec![0], vec![0]]));
        let id = Tensor::from_i64_matrix(f, &[&[1, 0], &[0, 1]]);
        assert!(matches!(
            find_k(&id, &c, DEFAULT_ORBIT_BUDGET),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn decomposition_examples() {
        let f = Field::Prime(5);
        let c = extract_hchain(&det(f)).unwrap();
        let a = Tensor::from_i64_matrix(f, &[&[1, 2], &[2, 4]]);
        let out = decompose_via_chain(&a, &c, DEFAULT_ORBIT_BUDGET).unwrap();
        assert!(out.decomposition.reproduces(&a));
        assert!(out.decomposition.len() <= 4 && out.bound == 4);
        let z = Tensor::zeros(&[3, 3], f);
        assert!(decompose_via_chain(&z, &c, DEFAULT_ORBIT_BUDGET)
            .unwrap()
            .decomposition
            .is_empty());
        // witness away from the corner forces a relabeling
        let b = Tensor::from_i64_matrix(f, &[&[0, 0, 0], &[0, 0, 0], &[0, 3, 1]]);
        let out = decompose_via_chain(&b, &c, DEFAULT_ORBIT_BUDGET).unwrap();
        assert!(out.decomposition.reproduces(&b) && out.decomposition.len() <= 4);
    }
}
