//! The pullback of degree-m polynomials in tensor entries along a
//! partition-rank parametrization, and polynomials in its kernel.
//!
//! An entry `x_i` becomes `sum_(I, t) A_{I,t}[i_I] * B_{I,t}[i_{I^c}]` over
//! the splits and term counts of a budget vector. Column `c` of the matrix
//! holds the coefficients of `monomial_c` composed with that substitution,
//! so kernel vectors are exactly the polynomials vanishing on the image.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::poly::{Monomial, Poly, VarSpace};
use crate::algebra::{ExactMatrix, Field, RowSpace, Scalar};
use crate::error::{Error, Result};
use crate::tensor::MultiIndex;

pub const DEFAULT_SIZE_CAP: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BudgetMode {
    /// `r` terms for every proper nonempty subset of the axes.
    Paper,
    /// Counts summing to `r` over the splits containing the first axis.
    Tight,
}

/// Term counts per split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BudgetVector {
    pub order: usize,
    pub counts: Vec<(Vec<usize>, usize)>,
    pub mode: BudgetMode,
}

fn subsets(order: usize, with_first_only: bool) -> Vec<Vec<usize>> {
    (1u64..(1 << order) - 1)
        .map(|mask| (0..order).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|s: &Vec<usize>| !with_first_only || s[0] == 0)
        .collect()
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl BudgetVector {
    pub fn paper(order: usize, r: usize) -> Self {
        BudgetVector {
            order,
            counts: subsets(order, false).into_iter().map(|s| (s, r)).collect(),
            mode: BudgetMode::Paper,
        }
    }

    /// Every tight budget vector for rank `r`, in a fixed order.
    pub fn tight_all(order: usize, r: usize) -> Vec<BudgetVector> {
        let splits = subsets(order, true);
        compositions(r, splits.len())
            .into_iter()
            .map(|c| BudgetVector {
                order,
                counts: splits.iter().cloned().zip(c).collect(),
                mode: BudgetMode::Tight,
            })
            .collect()
    }

    /// A single tight budget vector from explicit counts.
    pub fn tight(order: usize, counts: Vec<(Vec<usize>, usize)>) -> Result<Self> {
        for (s, _) in &counts {
            if s.first() != Some(&0) || s.len() >= order || s.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidInput(format!("{s:?} is not a split containing axis 0")));
            }
        }
        Ok(BudgetVector {
            order,
            counts,
            mode: BudgetMode::Tight,
        })
    }

    pub fn total_terms(&self) -> usize {
        self.counts.iter().map(|(_, c)| c).sum()
    }
}

/// For each tensor entry (row-major), its image as a list of products
/// `(a, b)` of two parameter ids.
struct Parametrization {
    images: Vec<Vec<(usize, usize)>>,
}

fn parametrize(order: usize, n: usize, budget: &BudgetVector) -> Parametrization {
    let dims = vec![n; order];
    let mut next = 0usize;
    // parameter ids per (split, term): base ids of A and B blocks
    let mut blocks = Vec::new();
    for (axes, count) in &budget.counts {
        let a_len = n.pow(axes.len() as u32);
        let b_len = n.pow((order - axes.len()) as u32);
        for _ in 0..*count {
            blocks.push((axes.clone(), next, next + a_len));
            next += a_len + b_len;
        }
    }
    let images = MultiIndex::new(&dims)
        .map(|idx| {
            blocks
                .iter()
                .map(|(axes, a0, b0)| {
                    let mut ia = 0;
                    let mut ib = 0;
                    for (ax, &i) in idx.iter().enumerate() {
                        if axes.contains(&ax) {
                            ia = ia * n + i;
                        } else {
                            ib = ib * n + i;
                        }
                    }
                    (a0 + ia, b0 + ib)
                })
                .collect()
        })
        .collect();
    Parametrization { images }
}

/// Degree-m monomials in the `n^d` entries, ascending in graded lex order.
pub fn entry_monomials(order: usize, n: usize, m: u32) -> Vec<Monomial> {
    let dims = vec![n; order];
    let vars: Vec<Vec<usize>> = MultiIndex::new(&dims).collect();
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn rec(vars: &[Vec<usize>], start: usize, left: u32, cur: &mut Vec<usize>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial::from_powers(cur.iter().map(|&i| (vars[i].clone(), 1)).collect()));
            return;
        }
        for i in start..vars.len() {
            cur.push(i);
            rec(vars, i, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(&vars, 0, m, &mut cur, &mut out);
    out.sort();
    out
}

type ParamMono = Vec<(usize, u32)>;

fn mono_mul(a: &ParamMono, x: usize, y: usize) -> ParamMono {
    let mut out = a.clone();
    for v in [x, y] {
        match out.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(i) => out[i].1 += 1,
            Err(i) => out.insert(i, (v, 1)),
        }
    }
    out
}

/// Expands one entry monomial; coefficients are exact positive integers.
fn expand(m: &Monomial, par: &Parametrization, n: usize) -> Result<BTreeMap<ParamMono, u64>> {
    let mut acc: BTreeMap<ParamMono, u64> = BTreeMap::new();
    acc.insert(Vec::new(), 1);
    for v in m.factors() {
        let off = v.iter().fold(0, |o, &i| o * n + i);
        let mut next: BTreeMap<ParamMono, u64> = BTreeMap::new();
        for (pm, c) in &acc {
            for &(a, b) in &par.images[off] {
                let slot = next.entry(mono_mul(pm, a, b)).or_insert(0);
                *slot = slot
                    .checked_add(*c)
                    .ok_or_else(|| Error::InvalidInput("pullback coefficient overflow".into()))?;
            }
        }
        acc = next;
    }
    Ok(acc)
}

fn check_params(order: usize, n: usize, m: u32) -> Result<()> {
    if order < 2 || n == 0 || m == 0 {
        return Err(Error::InvalidInput(format!(
            "need d >= 2, n >= 1, m >= 1 (got d={order}, n={n}, m={m})"
        )));
    }
    Ok(())
}

/// Estimated expansion work: columns times the worst-case term count.
fn work_estimate(order: usize, n: usize, m: u32, budget: &BudgetVector) -> u128 {
    let cols = entry_monomials_count(order, n, m);
    let per = (budget.total_terms().max(1) as u128).saturating_pow(m);
    cols.saturating_mul(per)
}

fn entry_monomials_count(order: usize, n: usize, m: u32) -> u128 {
    let vars = (n as u128).pow(order as u32);
    // C(m + vars - 1, m)
    let mut c: u128 = 1;
    for i in 0..m as u128 {
        c = c.saturating_mul(vars + i) / (i + 1);
    }
    c
}

struct Pullback {
    columns: Vec<Monomial>,
    column_images: Vec<BTreeMap<ParamMono, u64>>,
}

fn pullback(order: usize, n: usize, m: u32, budget: &BudgetVector, cap: u128) -> Result<Pullback> {
    check_params(order, n, m)?;
    if budget.order != order {
        return Err(Error::DimensionMismatch("budget order".into()));
    }
    let needed = work_estimate(order, n, m, budget);
    if needed > cap {
        return Err(Error::SizeCapExceeded { cap, needed });
    }
    let par = parametrize(order, n, budget);
    let columns = entry_monomials(order, n, m);
    let column_images = columns
        .iter()
        .map(|c| expand(c, &par, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(Pullback {
        columns,
        column_images,
    })
}

impl Pullback {
    /// Rows as sparse `(column, coefficient)` lists, rows sorted by
    /// parameter monomial.
    fn rows(&self, field: Field) -> Vec<(ParamMono, Vec<(usize, Scalar)>)> {
        let mut rows: BTreeMap<&ParamMono, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (c, img) in self.column_images.iter().enumerate() {
            for (pm, &coef) in img {
                let s = field.from_bigint(&BigInt::from(coef));
                if !s.is_zero() {
                    rows.entry(pm).or_default().push((c, s));
                }
            }
        }
        rows.into_iter().map(|(k, v)| (k.clone(), v)).collect()
    }
}

/// The matrix of the pullback; columns are [`entry_monomials`].
pub fn build_pullback_matrix(
    order: usize,
    n: usize,
    m: u32,
    field: Field,
    budget: &BudgetVector,
    cap: u128,
) -> Result<ExactMatrix> {
    let pb = pullback(order, n, m, budget, cap)?;
    let rows = pb.rows(field);
    let cells = rows.len() as u128 * pb.columns.len() as u128;
    if cells > cap {
        return Err(Error::SizeCapExceeded { cap, needed: cells });
    }
    let mut mat = ExactMatrix::zeros(rows.len(), pb.columns.len(), field);
    for (i, (_, entries)) in rows.into_iter().enumerate() {
        for (j, s) in entries {
            mat.set(i, j, s);
        }
    }
    Ok(mat)
}

fn kernel_polys(order: usize, n: usize, m: u32, field: Field, budgets: &[BudgetVector], cap: u128) -> Result<Vec<Poly>> {
    check_params(order, n, m)?;
    let columns = entry_monomials(order, n, m);
    let mut space = RowSpace::new(field, columns.len());
    for b in budgets {
        if space.is_full() {
            break;
        }
        let pb = pullback(order, n, m, b, cap)?;
        for (_, entries) in pb.rows(field) {
            space.insert_sparse(&entries);
            if space.is_full() {
                break;
            }
        }
    }
    let vs = VarSpace::Tensor(vec![n; order]);
    space
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let p = Poly::from_terms(vs.clone(), field, m, columns.iter().cloned().zip(v))?;
            Ok(p.normalized())
        })
        .collect()
}

/// Basis of the degree-m polynomials vanishing on the parametrized set(s).
pub fn vanishing_kernel(
    order: usize,
    n: usize,
    r: usize,
    m: u32,
    field: Field,
    mode: BudgetMode,
    cap: u128,
) -> Result<Vec<Poly>> {
    let budgets = match mode {
        BudgetMode::Paper => vec![BudgetVector::paper(order, r)],
        BudgetMode::Tight => BudgetVector::tight_all(order, r),
    };
    kernel_polys(order, n, m, field, &budgets, cap)
}

/// First canonical kernel polynomial, or `None` when the kernel is trivial.
pub fn find_vanishing_poly(
    order: usize,
    n: usize,
    r: usize,
    m: u32,
    field: Field,
    mode: BudgetMode,
    cap: u128,
) -> Result<Option<Poly>> {
    Ok(vanishing_kernel(order, n, r, m, field, mode, cap)?.into_iter().next())
}

/// The parametrization as polynomials: `phi(x_i)` for every entry `i`.
pub fn parametrization_polys(order: usize, n: usize, budget: &BudgetVector, field: Field) -> Vec<Poly> {
    let par = parametrize(order, n, budget);
    par.images
        .iter()
        .map(|img| {
            Poly::from_terms(
                VarSpace::Params,
                field,
                2,
                img.iter().map(|&(a, b)| {
                    (
                        Monomial::from_powers(vec![(vec![a], 1), (vec![b], 1)]),
                        field.one(),
                    )
                }),
            )
            .expect("degree-2 products")
        })
        .collect()
}

/// `f` composed with the budget's parametrization, expanded symbolically.
pub fn compose_with_budget(f: &Poly, budget: &BudgetVector) -> Result<Poly> {
    let VarSpace::Tensor(dims) = f.space() else {
        return Err(Error::InvalidInput("expected tensor-entry variables".into()));
    };
    let n = dims[0];
    if dims.iter().any(|&x| x != n) || dims.len() != budget.order {
        return Err(Error::DimensionMismatch("cubical tensor space of the budget order".into()));
    }
    let phis = parametrization_polys(budget.order, n, budget, f.field());
    f.compose(VarSpace::Params, |v| {
        let off = v.iter().fold(0, |o, &i| o * n + i);
        phis[off].clone()
    })
}
