//! Independent re-checks of report certificates.

use anyhow::Result;
use serde::Serialize;

use subranks_core::bridge::{evaluate_strength, strength_at_most, StrengthTerm};
use subranks_core::equations::{compose_with_budget, BudgetVector};
use subranks_core::json::tensor_hash;
use subranks_core::nullcone::certify_nullcone;
use subranks_core::rank::{matrix_rank, rank_at_most, LowerBound, RankKind, SearchOptions, Strategy};
use subranks_core::Field;

use crate::report::Certificate;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub kind: String,
    pub label: String,
    pub ok: bool,
    pub detail: String,
}

fn check(kind: &str, label: &str, failures: Vec<String>) -> Check {
    Check {
        kind: kind.into(),
        label: label.into(),
        ok: failures.is_empty(),
        detail: if failures.is_empty() { "ok".into() } else { failures.join("; ") },
    }
}

pub fn verify_certificate(c: &Certificate, opts: &SearchOptions) -> Result<Check> {
    // searches below never reuse the certificate's own witness
    let search = SearchOptions { strategy: Strategy::Search, ..*opts };
    Ok(match c {
        Certificate::Rank { rank_kind, label, tensor_hash: hash, tensor, value, lower_bound, witness } => {
            let t = tensor.to_tensor()?;
            let dec = witness.to_decomposition()?;
            let kind: RankKind = (*rank_kind).into();
            let mut bad = Vec::new();
            if &tensor_hash(&t) != hash {
                bad.push("tensor hash mismatch".into());
            }
            if !dec.reproduces(&t) {
                bad.push("witness does not evaluate to the tensor".into());
            }
            if dec.len() != *value {
                bad.push(format!("witness has {} terms, value {value}", dec.len()));
            }
            if kind == RankKind::Slice && !dec.is_slice() {
                bad.push("slice rank witness uses a non-slice split".into());
            }
            match lower_bound {
                LowerBound::MatrixRank => {
                    if t.order() != 2 || matrix_rank(&t) != *value {
                        bad.push("matrix rank differs".into());
                    }
                }
                LowerBound::ExhaustiveSearch if *value > 0 => {
                    let below = if t.field().is_finite() {
                        rank_at_most(&t, value - 1, kind, &search)?.holds
                    } else {
                        // only value 1 carries this tag over Q
                        *value != 1 || t.is_zero()
                    };
                    if below {
                        bad.push(format!("rank at most {} found", value - 1));
                    }
                }
                _ => {}
            }
            check("rank", label, bad)
        }
        Certificate::Decomposition { label, tensor_hash: hash, tensor, bound, witness } => {
            let t = tensor.to_tensor()?;
            let dec = witness.to_decomposition()?;
            let mut bad = Vec::new();
            if &tensor_hash(&t) != hash {
                bad.push("tensor hash mismatch".into());
            }
            if !dec.reproduces(&t) {
                bad.push("decomposition does not evaluate to the tensor".into());
            }
            if dec.len() > *bound {
                bad.push(format!("{} terms exceed the bound {bound}", dec.len()));
            }
            check("decomposition", label, bad)
        }
        Certificate::Strength { label, poly, value, lower_bound, witness } => {
            let p = poly.to_poly(Field::Rational)?;
            let terms = witness
                .iter()
                .map(|w| Ok(StrengthTerm { q: w.q.to_poly(p.field())?, r: w.r.to_poly(p.field())? }))
                .collect::<Result<Vec<_>>>()?;
            let d = p.degree();
            let mut bad = Vec::new();
            if terms.iter().any(|t| t.q.degree() == 0 || t.r.degree() == 0 || t.q.degree() + t.r.degree() != d) {
                bad.push("factor degrees outside [1, d-1]".into());
            }
            if evaluate_strength(&p, &terms)? != p {
                bad.push("products do not sum to the polynomial".into());
            }
            if terms.len() != *value {
                bad.push(format!("witness has {} terms, value {value}", terms.len()));
            }
            if *lower_bound == LowerBound::ExhaustiveSearch && *value > 0 {
                let below = if p.field().is_finite() {
                    strength_at_most(&p, value - 1, &search)?.holds
                } else {
                    *value != 1 || p.is_zero()
                };
                if below {
                    bad.push(format!("strength at most {} found", value - 1));
                }
            }
            check("strength", label, bad)
        }
        Certificate::Equation { d, n, r, mode, poly } => {
            let f = poly.to_poly(Field::Rational)?;
            let budgets = match mode.as_str() {
                "paper" => vec![BudgetVector::paper(*d, *r)],
                _ => BudgetVector::tight_all(*d, *r),
            };
            let mut bad = Vec::new();
            if f.is_zero() {
                bad.push("zero polynomial".into());
            }
            for b in &budgets {
                if !compose_with_budget(&f, b)?.is_zero() {
                    bad.push(format!("nonzero on a parametrization with {} terms", b.total_terms()));
                }
            }
            check("equation", &format!("d={d} n={n} r={r} m={}", f.degree()), bad)
        }
        Certificate::Nullcone { label, tensor_hash: hash, tensor, triple, certified } => {
            let t = tensor.to_tensor()?;
            let tr = triple.to_triple(t.field())?;
            let mut bad = Vec::new();
            if &tensor_hash(&t) != hash {
                bad.push("tensor hash mismatch".into());
            }
            if certify_nullcone(&t, &tr)? != *certified {
                bad.push("nullcone check disagrees".into());
            }
            check("nullcone", label, bad)
        }
    })
}
