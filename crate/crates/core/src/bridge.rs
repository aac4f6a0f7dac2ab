//! Homogeneous polynomials and symmetric tensors: the multiplication map
//! `phi`, the symmetrization `psi`, restriction to coordinate subsets, and
//! strength (Schmidt rank).

use std::collections::HashMap;

use crate::algebra::{Field, Scalar};
use crate::equations::{Monomial, Poly, VarSpace};
use crate::error::{Error, Result};
use crate::rank::search::{self, Group, NodeBudget, Problem};
use crate::rank::{LowerBound, PartitionDecomposition, PartitionTerm, SearchOptions};
use crate::tensor::{IndexSubsets, Tensor};

/// A homogeneous polynomial in point variables `x_0..x_{n-1}`.
pub type HomogPoly = Poly;

fn point_n(p: &Poly) -> Result<usize> {
    match p.space() {
        VarSpace::Point(n) => Ok(*n),
        other => Err(Error::InvalidInput(format!("expected point variables, got {other:?}"))),
    }
}

/// Sorted index multiset of a monomial.
fn multiset(m: &Monomial) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.degree() as usize);
    for (v, e) in m.powers() {
        out.extend(std::iter::repeat_n(v[0], *e as usize));
    }
    out
}

fn monomial_of(indices: &[usize]) -> Monomial {
    let mut powers: Vec<(Vec<usize>, u32)> = Vec::new();
    for &i in indices {
        match powers.iter_mut().find(|(v, _)| v[0] == i) {
            Some((_, e)) => *e += 1,
            None => powers.push((vec![i], 1)),
        }
    }
    Monomial::from_powers(powers)
}

/// Nondecreasing `e`-tuples over `[n]`, lexicographic.
fn multisets(n: usize, e: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(e);
    fn rec(n: usize, e: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == e {
            out.push(cur.clone());
            return;
        }
        for i in from..n {
            cur.push(i);
            rec(n, e, i, cur, out);
            cur.pop();
        }
    }
    rec(n, e, 0, &mut cur, &mut out);
    out
}

/// `e_{i_1} (x) ... (x) e_{i_d} -> x_{i_1} ... x_{i_d}`, extended linearly.
pub fn phi(t: &Tensor) -> Result<HomogPoly> {
    if !t.is_cubical() {
        return Err(Error::DimensionMismatch(format!("phi needs a cubical tensor, got {:?}", t.dims())));
    }
    let n = t.dims()[0];
    let mut p = Poly::zero(VarSpace::Point(n), t.field(), t.order() as u32);
    for (idx, v) in t.support() {
        p.add_term(monomial_of(&idx), v.clone());
    }
    Ok(p)
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 0..d {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=k).map(move |at| {
                    let mut q = p.clone();
                    q.insert(at, k);
                    q
                })
            })
            .collect();
    }
    out
}

fn check_characteristic(field: Field, degree: u32) -> Result<()> {
    let c = field.characteristic();
    if c != 0 && c <= degree {
        return Err(Error::BadCharacteristic { char: c, degree });
    }
    Ok(())
}

/// Symmetrization: each monomial's index multiset is spread over the `d`
/// positions by all `d!` permutations, duplicates summed.
pub fn psi(p: &HomogPoly) -> Result<Tensor> {
    let n = point_n(p)?;
    let d = p.degree() as usize;
    check_characteristic(p.field(), p.degree())?;
    if d == 0 || n == 0 {
        return Err(Error::InvalidInput("psi needs degree >= 1 and n >= 1".into()));
    }
    let mut t = Tensor::zeros(&vec![n; d], p.field());
    let perms = permutations(d);
    let mut idx = vec![0; d];
    for (m, c) in p.terms() {
        let ms = multiset(m);
        for pi in &perms {
            for j in 0..d {
                idx[j] = ms[pi[j]];
            }
            let cur = t.get(&idx).clone();
            t.set(&idx, &cur + c);
        }
    }
    Ok(t)
}

/// Sets every variable outside `u` to zero.
pub fn restrict(p: &HomogPoly, u: &[usize]) -> Result<HomogPoly> {
    let n = point_n(p)?;
    if let Some(&bad) = u.iter().find(|&&i| i >= n) {
        return Err(Error::IndexOutOfRange(format!("variable {bad} of {n}")));
    }
    Ok(p.filter_vars(|v| u.contains(&v[0])))
}

/// Restriction followed by relabeling the kept variables `0..|u|` in order.
pub fn restrict_compact(p: &HomogPoly, u: &[usize]) -> Result<HomogPoly> {
    let mut u = u.to_vec();
    u.sort_unstable();
    u.dedup();
    let r = restrict(p, &u)?;
    r.map_vars(VarSpace::Point(u.len()), |v| {
        vec![u.binary_search(&v[0]).expect("kept variable")]
    })
}

/// `C(d, floor(d/2))`.
pub fn d_const(d: u32) -> u64 {
    let k = (d / 2) as u64;
    (0..k).fold(1u64, |acc, i| acc * (d as u64 - i) / (i + 1))
}

/// One product `Q R` of a strength decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrengthTerm {
    pub q: HomogPoly,
    pub r: HomogPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrengthCertificate {
    pub value: usize,
    pub witness: Vec<StrengthTerm>,
    pub lower_bound: LowerBound,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrengthDecision {
    pub holds: bool,
    pub witness: Option<Vec<StrengthTerm>>,
    pub nodes: u64,
}

/// `sum Q_i R_i`, in the space of `like`.
pub fn evaluate_strength(like: &HomogPoly, terms: &[StrengthTerm]) -> Result<HomogPoly> {
    let mut acc = Poly::zero(like.space().clone(), like.field(), like.degree());
    for t in terms {
        acc = acc.add(&t.q.mul(&t.r)?)?;
    }
    Ok(acc)
}

fn check_strength_input(p: &HomogPoly) -> Result<usize> {
    let n = point_n(p)?;
    if p.degree() < 2 && !p.is_zero() {
        return Err(Error::InvalidInput("strength needs degree >= 2".into()));
    }
    Ok(n)
}

/// `P = sum_i x_i R_i` grouping monomials by their smallest variable.
pub fn trivial_strength_witness(p: &HomogPoly) -> Result<Vec<StrengthTerm>> {
    let n = check_strength_input(p)?;
    let field = p.field();
    let d = p.degree();
    let mut by_var: Vec<Option<Poly>> = vec![None; n];
    for (m, c) in p.terms() {
        let i = multiset(m)[0];
        let rest = m.div_var(&vec![i]).expect("variable occurs");
        let slot = by_var[i].get_or_insert_with(|| Poly::zero(VarSpace::Point(n), field, d - 1));
        slot.add_term(rest, c.clone());
    }
    Ok(by_var
        .into_iter()
        .enumerate()
        .filter_map(|(i, r)| {
            r.filter(|r| !r.is_zero()).map(|r| StrengthTerm {
                q: Poly::from_terms(VarSpace::Point(n), field, 1, [(Monomial::var(vec![i]), field.one())])
                    .expect("linear form"),
                r,
            })
        })
        .collect())
}

struct StrengthProblem {
    problem: Problem,
    n: usize,
    /// Per group: degree of `Q` and the monomial lists of both sides.
    sides: Vec<(u32, Vec<Vec<usize>>, Vec<Vec<usize>>)>,
}

fn build_strength_problem(p: &HomogPoly) -> Result<StrengthProblem> {
    let n = point_n(p)?;
    let d = p.degree() as usize;
    let modulus = p.field().modulus().ok_or(Error::NotFiniteField)?;
    let top = multisets(n, d);
    let at: HashMap<Vec<usize>, usize> = top.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut target = vec![0u32; top.len()];
    for (m, c) in p.terms() {
        target[at[&multiset(m)]] = c.residue().expect("finite field");
    }
    let mut groups = Vec::new();
    let mut sides = Vec::new();
    for e in 1..=d / 2 {
        let qs = multisets(n, e);
        let rs = multisets(n, d - e);
        let mut pos = Vec::with_capacity(qs.len() * rs.len());
        for q in &qs {
            for r in &rs {
                let mut prod: Vec<usize> = q.iter().chain(r).copied().collect();
                prod.sort_unstable();
                pos.push(at[&prod]);
            }
        }
        groups.push(Group {
            side_len: qs.len(),
            other_len: rs.len(),
            pos,
        });
        sides.push((e as u32, qs, rs));
    }
    Ok(StrengthProblem {
        problem: Problem {
            p: modulus,
            ambient: top.len(),
            target,
            groups,
        },
        n,
        sides,
    })
}

fn lift_found(p: &HomogPoly, sp: &StrengthProblem, found: Vec<search::FoundTerm>) -> Vec<StrengthTerm> {
    let field = p.field();
    let space = VarSpace::Point(sp.n);
    let mut out: Vec<StrengthTerm> = found
        .into_iter()
        .map(|ft| {
            let (e, qs, rs) = &sp.sides[ft.group];
            let build = |coefs: &[u32], monos: &[Vec<usize>], deg: u32| {
                Poly::from_terms(
                    space.clone(),
                    field,
                    deg,
                    coefs
                        .iter()
                        .zip(monos)
                        .filter(|(c, _)| **c != 0)
                        .map(|(c, m)| (monomial_of(m), field.from_u32(*c))),
                )
                .expect("monomials in range")
            };
            let q = build(&ft.side, qs, *e);
            let r = build(&ft.other, rs, p.degree() - e);
            normalize_term(StrengthTerm { q, r }, qs)
        })
        .collect();
    out.sort_by_key(|a| (a.q.degree(), a.q.to_string()));
    out
}

/// Scales `Q` so its first nonzero coefficient (in monomial-list order) is 1.
fn normalize_term(t: StrengthTerm, order: &[Vec<usize>]) -> StrengthTerm {
    let lead = order
        .iter()
        .map(|m| t.q.coefficient(&monomial_of(m)))
        .find(|c| !c.is_zero());
    match lead.and_then(|c| c.inv().map(|i| (c, i))) {
        Some((c, inv)) => StrengthTerm {
            q: t.q.scale(&inv),
            r: t.r.scale(&c),
        },
        None => t,
    }
}

/// Decides whether `P` is a sum of at most `k` products `Q_i R_i` with
/// `1 <= deg Q_i, deg R_i <= d - 1`.
pub fn strength_at_most(p: &HomogPoly, k: usize, opts: &SearchOptions) -> Result<StrengthDecision> {
    check_strength_input(p)?;
    if p.is_zero() {
        return Ok(StrengthDecision {
            holds: true,
            witness: Some(Vec::new()),
            nodes: 0,
        });
    }
    let ub = trivial_strength_witness(p)?;
    if k >= ub.len() {
        return Ok(StrengthDecision {
            holds: true,
            witness: Some(ub),
            nodes: 0,
        });
    }
    if k == 0 {
        return Ok(StrengthDecision {
            holds: false,
            witness: None,
            nodes: 0,
        });
    }
    if !p.field().is_finite() {
        return Err(Error::LowerBoundUnavailable { upper: ub.len() });
    }
    let sp = build_strength_problem(p)?;
    let order: Vec<usize> = (0..sp.problem.groups.len()).collect();
    let mut budget = NodeBudget::new(opts.budget);
    let found = search::search(&sp.problem, k, &order, &mut budget)?;
    Ok(StrengthDecision {
        holds: found.is_some(),
        witness: found.map(|f| lift_found(p, &sp, f)),
        nodes: budget.used(),
    })
}

/// Exact strength over GF(p) by iterative deepening; over Q a witnessed
/// upper bound.
pub fn strength(p: &HomogPoly, opts: &SearchOptions) -> Result<StrengthCertificate> {
    check_strength_input(p)?;
    let ub = trivial_strength_witness(p)?;
    if ub.len() <= 1 {
        return Ok(StrengthCertificate {
            value: ub.len(),
            witness: ub,
            lower_bound: LowerBound::ExhaustiveSearch,
            nodes: 0,
        });
    }
    if !p.field().is_finite() {
        return Ok(StrengthCertificate {
            value: ub.len(),
            witness: ub,
            lower_bound: LowerBound::None,
            nodes: 0,
        });
    }
    let sp = build_strength_problem(p)?;
    let order: Vec<usize> = (0..sp.problem.groups.len()).collect();
    let mut budget = NodeBudget::new(opts.budget);
    for k in 1..ub.len() {
        if let Some(f) = search::search(&sp.problem, k, &order, &mut budget)? {
            let witness = lift_found(p, &sp, f);
            return Ok(StrengthCertificate {
                value: witness.len(),
                witness,
                lower_bound: LowerBound::ExhaustiveSearch,
                nodes: budget.used(),
            });
        }
    }
    Ok(StrengthCertificate {
        value: ub.len(),
        witness: ub,
        lower_bound: LowerBound::ExhaustiveSearch,
        nodes: budget.used(),
    })
}

/// `psi(Q R) = sum_{|S| = deg Q} psi(Q)|_S (x) psi(R)|_{S^c}`: at most
/// `C(d, deg Q)` partition terms per product.
pub fn transport_strength_witness(p: &HomogPoly, terms: &[StrengthTerm]) -> Result<PartitionDecomposition> {
    let n = point_n(p)?;
    let d = p.degree() as usize;
    let mut dec = PartitionDecomposition::empty(&vec![n; d], p.field());
    for t in terms {
        let e = t.q.degree() as usize;
        let a = psi(&t.q)?;
        let b = psi(&t.r)?;
        for s in multisets_strict(d, e) {
            dec.push(PartitionTerm::new(d, &s, a.clone(), b.clone())?);
        }
    }
    Ok(dec)
}

/// Strictly increasing `e`-subsets of `[d]`.
fn multisets_strict(d: usize, e: usize) -> Vec<Vec<usize>> {
    multisets(d, e)
        .into_iter()
        .filter(|s| s.windows(2).all(|w| w[0] < w[1]))
        .collect()
}

/// `phi(A (x) B) = phi(A) phi(B)`: one product per partition term.
pub fn transport_partition_witness(dec: &PartitionDecomposition) -> Result<Vec<StrengthTerm>> {
    dec.terms()
        .iter()
        .map(|t| Ok(StrengthTerm { q: phi(&t.a)?, r: phi(&t.b)? }))
        .collect()
}

/// One checked implication of the pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineLink {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineReport {
    pub n: usize,
    pub d: u32,
    pub r: usize,
    pub size_cap: usize,
    pub d_const: u64,
    pub max_restricted_strength: usize,
    pub subtensors_checked: u64,
    pub strength: Option<usize>,
    pub prank_upper: Option<usize>,
    pub prank_exact: Option<usize>,
    pub links: Vec<PipelineLink>,
    /// Always false: the bounds of the full statement are out of reach.
    pub theorem_claimed: bool,
}

impl PipelineReport {
    pub fn all_pass(&self) -> bool {
        self.links.iter().all(|l| l.pass)
    }
}

fn subsets_up_to(n: usize, cap: usize) -> Vec<Vec<usize>> {
    (1..=cap.min(n)).flat_map(|s| multisets_strict(n, s)).collect()
}

/// Runs every implication of the strength-to-partition-rank argument that
/// is checkable with subsets of at most `size_cap` variables.
pub fn verify_pipeline(p: &HomogPoly, r: usize, size_cap: usize, opts: &SearchOptions) -> Result<PipelineReport> {
    let n = point_n(p)?;
    let d = p.degree();
    check_characteristic(p.field(), d)?;
    check_strength_input(p)?;
    let dc = d_const(d);
    let t = psi(p)?;
    let mut links = Vec::new();

    // restricted strengths, with witnesses reused below
    let mut max_s = 0;
    let mut restricted_ok = true;
    let mut witnesses: Vec<(Vec<usize>, usize, Vec<StrengthTerm>)> = Vec::new();
    for u in subsets_up_to(n, size_cap) {
        let pu = restrict(p, &u)?;
        let c = strength(&restrict_compact(p, &u)?, opts)?;
        max_s = max_s.max(c.value);
        restricted_ok &= c.value <= r;
        let pu_witness = if c.value == 0 { Vec::new() } else { lift_back(&pu, &u, &c.witness)? };
        witnesses.push((u, c.value, pu_witness));
    }
    links.push(PipelineLink {
        name: "strength of every restriction is at most r".into(),
        pass: restricted_ok,
        detail: format!("max strength over |U| <= {} is {max_s}", size_cap.min(n)),
    });

    let sym = (0..d as usize).all(|a| {
        let mut perm: Vec<usize> = (0..d as usize).collect();
        perm.swap(0, a);
        t.permute_axes(&perm).ok().as_ref() == Some(&t)
    });
    let back = phi(&t)?;
    let fact: u64 = (1..=d as u64).product();
    let roundtrip = back == p.scale(&p.field().from_i64(fact as i64));
    links.push(PipelineLink {
        name: "psi(P) is symmetric and phi(psi(P)) = d! P".into(),
        pass: sym && roundtrip,
        detail: format!("symmetric: {sym}, round trip: {roundtrip}"),
    });

    // every subtensor inside U^d inherits the transported witness of P[U]
    let mut checked = 0u64;
    let mut sub_ok = true;
    let bound = r as u64 * dc;
    for (u, s, w) in &witnesses {
        let pu = restrict(p, u)?;
        let dec = transport_strength_witness(&pu, w)?;
        let subsets = IndexSubsets::new(vec![u.clone(); d as usize])?;
        let local = dec.restrict(&subsets)?;
        checked += 1;
        sub_ok &= local.reproduces(&t.subtensor(&subsets)?) && local.len() as u64 <= dc * *s as u64;
    }
    sub_ok &= restricted_ok || witnesses.is_empty();
    links.push(PipelineLink {
        name: "prank of every cubical subtensor is at most r D".into(),
        pass: sub_ok,
        detail: format!("{checked} symmetric subtensors certified by transported witnesses, bound {bound}"),
    });

    let full = strength(p, opts).ok();
    let (strength_value, prank_upper, transport_ok) = match &full {
        Some(c) => {
            let dec = transport_strength_witness(p, &c.witness)?;
            let ok = dec.reproduces(&t) && dec.len() as u64 <= dc * c.value as u64;
            (Some(c.value), Some(dec.len()), ok)
        }
        None => (None, None, true),
    };
    links.push(PipelineLink {
        name: "prank(psi(P)) <= D strength(P) by witness transport".into(),
        pass: transport_ok,
        detail: match (strength_value, prank_upper) {
            (Some(s), Some(u)) => format!("strength {s}, transported length {u}"),
            _ => "strength search exceeded the budget".into(),
        },
    });

    let exact = if p.field().is_finite() {
        crate::rank::prank(&t, opts).ok()
    } else {
        None
    };
    let prank_exact = exact.as_ref().map(|c| c.value);
    let lower_ok = match (&exact, strength_value) {
        (Some(c), Some(s)) => {
            let terms = transport_partition_witness(&c.witness)?;
            let scaled = evaluate_strength(p, &terms)? == back;
            scaled && s <= c.value && c.value as u64 <= dc * s as u64
        }
        _ => true,
    };
    links.push(PipelineLink {
        name: "strength(phi(T)) <= prank(T) <= D strength(P)".into(),
        pass: lower_ok,
        detail: match prank_exact {
            Some(v) => format!("prank(T) = {v}"),
            None => "prank(T) not computed within budget".into(),
        },
    });

    Ok(PipelineReport {
        n,
        d,
        r,
        size_cap,
        d_const: dc,
        max_restricted_strength: max_s,
        subtensors_checked: checked,
        strength: strength_value,
        prank_upper,
        prank_exact,
        links,
        theorem_claimed: false,
    })
}

/// Relabels a witness on `|u|` compact variables back into `P`'s variables.
fn lift_back(like: &HomogPoly, u: &[usize], terms: &[StrengthTerm]) -> Result<Vec<StrengthTerm>> {
    let space = like.space().clone();
    let map = |p: &Poly| p.map_vars(space.clone(), |v| vec![u[v[0]]]);
    terms
        .iter()
        .map(|t| Ok(StrengthTerm { q: map(&t.q)?, r: map(&t.r)? }))
        .collect()
}

/// `sum_i c_i x^{alpha_i}` from 0-based index multisets.
pub fn point_poly(n: usize, field: Field, terms: &[(&[usize], i64)]) -> Result<HomogPoly> {
    let degree = terms.first().map(|(m, _)| m.len() as u32).unwrap_or(0);
    Poly::from_terms(
        VarSpace::Point(n),
        field,
        degree,
        terms.iter().map(|(m, c)| (monomial_of(m), field.from_i64(*c))),
    )
}

/// The coefficient of the monomial with index multiset `m`.
pub fn coefficient_of(p: &HomogPoly, m: &[usize]) -> Scalar {
    p.coefficient(&monomial_of(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Field {
        Field::Prime(p)
    }

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    #[test]
    fn phi_examples() {
        let f = gf(7);
        let t = Tensor::from_entries(&[2, 2], f, &[(&[0, 1], 1)]).unwrap();
        assert_eq!(phi(&t).unwrap(), point_poly(2, f, &[(&[0, 1], 1)]).unwrap());
        let id = Tensor::from_i64_matrix(f, &[&[1, 0], &[0, 1]]);
        assert_eq!(phi(&id).unwrap(), point_poly(2, f, &[(&[0, 0], 1), (&[1, 1], 1)]).unwrap());
    }

    #[test]
    fn psi_examples() {
        let f = gf(7);
        let t = psi(&point_poly(2, f, &[(&[0, 1], 1)]).unwrap()).unwrap();
        assert_eq!(t, Tensor::from_entries(&[2, 2], f, &[(&[0, 1], 1), (&[1, 0], 1)]).unwrap());
        let sq = psi(&point_poly(2, f, &[(&[0, 0], 1)]).unwrap()).unwrap();
        assert_eq!(sq, Tensor::from_entries(&[2, 2], f, &[(&[0, 0], 2)]).unwrap());
        let bad = point_poly(2, gf(3), &[(&[0, 0, 1], 1)]).unwrap();
        assert!(matches!(psi(&bad), Err(Error::BadCharacteristic { char: 3, degree: 3 })));
    }

    #[test]
    fn restrict_examples() {
        let f = gf(7);
        let p = point_poly(3, f, &[(&[0, 1, 2], 1)]).unwrap();
        assert_eq!(restrict(&p, &[0, 1, 2]).unwrap(), p);
        assert!(restrict(&p, &[0, 1]).unwrap().is_zero());
        let q = point_poly(2, f, &[(&[0, 0, 0], 1), (&[1, 1, 1], 1)]).unwrap();
        assert_eq!(restrict(&q, &[0]).unwrap(), point_poly(2, f, &[(&[0, 0, 0], 1)]).unwrap());
    }

    #[test]
    fn d_const_values() {
        assert_eq!((d_const(2), d_const(3), d_const(4)), (2, 3, 6));
        assert!(d_const(4) <= 16);
    }

    #[test]
    fn strength_examples() {
        let f = gf(7);
        let mono = point_poly(3, f, &[(&[0, 1, 2], 1)]).unwrap();
        assert!(strength_at_most(&mono, 1, &opts()).unwrap().holds);
        let cubes = point_poly(3, f, &[(&[0, 0, 0], 1), (&[1, 1, 1], 1), (&[2, 2, 2], 1)]).unwrap();
        assert!(!strength_at_most(&cubes, 1, &opts()).unwrap().holds);
        let two = strength_at_most(&cubes, 2, &opts()).unwrap();
        assert!(two.holds);
        assert_eq!(evaluate_strength(&cubes, &two.witness.unwrap()).unwrap(), cubes);
        let c = strength(&cubes, &opts()).unwrap();
        assert_eq!((c.value, c.lower_bound), (2, LowerBound::ExhaustiveSearch));
        // x0 x1 + x2 x3 has strength 2 as a quadric of rank 4
        let quad = point_poly(4, f, &[(&[0, 1], 1), (&[2, 3], 1)]).unwrap();
        assert_eq!(strength(&quad, &opts()).unwrap().value, 2);
    }

    #[test]
    fn transports() {
        let f = gf(7);
        let cubes = point_poly(3, f, &[(&[0, 0, 0], 1), (&[1, 1, 1], 1), (&[2, 2, 2], 1)]).unwrap();
        let c = strength(&cubes, &opts()).unwrap();
        let dec = transport_strength_witness(&cubes, &c.witness).unwrap();
        assert!(dec.reproduces(&psi(&cubes).unwrap()));
        assert!(dec.len() as u64 <= d_const(3) * c.value as u64);
        let t = psi(&cubes).unwrap();
        let back = transport_partition_witness(&dec).unwrap();
        assert_eq!(evaluate_strength(&cubes, &back).unwrap(), phi(&t).unwrap());
    }

    #[test]
    fn pipeline_examples() {
        let f = gf(7);
        let mono = point_poly(3, f, &[(&[0, 1, 2], 1)]).unwrap();
        let rep = verify_pipeline(&mono, 1, 3, &opts()).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
        assert!(!rep.theorem_claimed);
        let zero = Poly::zero(VarSpace::Point(3), f, 3);
        let rep = verify_pipeline(&zero, 0, 2, &opts()).unwrap();
        assert!(rep.all_pass());
        assert_eq!((rep.strength, rep.prank_exact), (Some(0), Some(0)));
    }
}
