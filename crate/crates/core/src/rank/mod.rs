//! Partition rank and slice rank: exact decisions over GF(p), witnessed
//! upper bounds over Q, and the order-2 baseline.

mod decomposition;
mod matrix;
pub(crate) mod search;

pub use decomposition::{PartitionDecomposition, PartitionTerm};
pub use matrix::{
    max_full_rank_submatrix, reconstruct_outside, three_r_decomposition, FullRankBlock,
    Reconstruction, Violation,
};
pub use search::NodeBudget;

use serde::{Deserialize, Serialize};

use crate::algebra::ExactMatrix;
use crate::error::{Error, Result};
use crate::tensor::{AxisSplit, MultiIndex, Tensor};
use search::{Group, Problem};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// How a certificate's lower bound was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowerBound {
    ExhaustiveSearch,
    MatrixRank,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankKind {
    Partition,
    Slice,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Elimination for order 2, search otherwise.
    Auto,
    /// Always search, also for matrices.
    Search,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub budget: u64,
    /// Canonical branch order. When off, splits with larger flattening rank
    /// are tried first; answers are the same, witnesses may differ.
    pub deterministic: bool,
    pub strategy: Strategy,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            deterministic: true,
            strategy: Strategy::Auto,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    pub value: usize,
    pub witness: PartitionDecomposition,
    pub lower_bound: LowerBound,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub holds: bool,
    pub witness: Option<PartitionDecomposition>,
    pub nodes: u64,
}

fn splits_for(order: usize, kind: RankKind) -> Vec<AxisSplit> {
    match kind {
        RankKind::Partition => AxisSplit::all(order),
        RankKind::Slice => {
            let mut s = AxisSplit::all(order);
            s.retain(|x| x.min_side() == 1);
            s
        }
    }
}

/// Enumerated side of a split: the smaller one, `I` itself on ties.
fn side_axes(t: &Tensor, split: &AxisSplit) -> (Vec<usize>, Vec<usize>) {
    let i = split.axes().to_vec();
    let c = split.complement();
    let size = |ax: &[usize]| ax.iter().map(|&a| t.dims()[a]).product::<usize>();
    if size(&c) < size(&i) {
        (c, i)
    } else {
        (i, c)
    }
}

fn group_for(t: &Tensor, side: &[usize], other: &[usize]) -> Group {
    let sdims: Vec<usize> = side.iter().map(|&a| t.dims()[a]).collect();
    let odims: Vec<usize> = other.iter().map(|&a| t.dims()[a]).collect();
    let side_len: usize = sdims.iter().product();
    let other_len: usize = odims.iter().product();
    let mut pos = Vec::with_capacity(side_len * other_len);
    let mut idx = vec![0; t.order()];
    for si in MultiIndex::new(&sdims) {
        for (k, &a) in side.iter().enumerate() {
            idx[a] = si[k];
        }
        for oi in MultiIndex::new(&odims) {
            for (k, &a) in other.iter().enumerate() {
                idx[a] = oi[k];
            }
            pos.push(t.offset(&idx));
        }
    }
    Group {
        side_len,
        other_len,
        pos,
    }
}

struct TensorProblem {
    problem: Problem,
    sides: Vec<(Vec<usize>, Vec<usize>)>,
    order: Vec<usize>,
}

fn build_problem(t: &Tensor, kind: RankKind, deterministic: bool) -> Result<TensorProblem> {
    let p = t.field().modulus().ok_or(Error::NotFiniteField)?;
    let splits = splits_for(t.order(), kind);
    let sides: Vec<(Vec<usize>, Vec<usize>)> = splits.iter().map(|s| side_axes(t, s)).collect();
    let groups = sides.iter().map(|(s, o)| group_for(t, s, o)).collect();
    let mut order: Vec<usize> = (0..splits.len()).collect();
    if !deterministic {
        let ranks: Vec<usize> = splits.iter().map(|s| t.flatten(s).rank()).collect();
        order.sort_by_key(|&g| std::cmp::Reverse(ranks[g]));
    }
    let target = t.entries().iter().map(|x| x.residue().unwrap()).collect();
    Ok(TensorProblem {
        problem: Problem {
            p,
            ambient: t.len(),
            target,
            groups,
        },
        sides,
        order,
    })
}

fn witness_from_found(
    t: &Tensor,
    tp: &TensorProblem,
    found: Vec<search::FoundTerm>,
) -> PartitionDecomposition {
    let field = t.field();
    let terms = found
        .into_iter()
        .map(|ft| {
            let (side, other) = &tp.sides[ft.group];
            let sdims: Vec<usize> = side.iter().map(|&a| t.dims()[a]).collect();
            let odims: Vec<usize> = other.iter().map(|&a| t.dims()[a]).collect();
            let lift = |v: Vec<u32>, dims: &[usize]| {
                Tensor::from_vec(dims, field, v.into_iter().map(|x| field.from_u32(x)).collect())
                    .expect("sized by group")
            };
            let a = lift(ft.side, &sdims);
            let b = lift(ft.other, &odims);
            PartitionTerm::new(t.order(), side, a, b).expect("valid split")
        })
        .collect();
    PartitionDecomposition::new(t.dims(), field, terms)
        .expect("terms built on tensor dims")
        .canonical()
}

/// Rank factorization witness of one flattening.
fn flattening_witness(t: &Tensor, split: &AxisSplit) -> PartitionDecomposition {
    let m = t.flatten(split);
    let field = t.field();
    let axes = split.axes().to_vec();
    let comp = split.complement();
    let adims: Vec<usize> = axes.iter().map(|&a| t.dims()[a]).collect();
    let bdims: Vec<usize> = comp.iter().map(|&a| t.dims()[a]).collect();
    let rref = m.rref();
    let terms = rref
        .pivots
        .iter()
        .enumerate()
        .map(|(k, &pc)| {
            let col: Vec<_> = (0..m.rows()).map(|i| m.get(i, pc).clone()).collect();
            let row = rref.matrix.row(k).to_vec();
            PartitionTerm::new(
                t.order(),
                &axes,
                Tensor::from_vec(&adims, field, col).expect("column"),
                Tensor::from_vec(&bdims, field, row).expect("row"),
            )
            .expect("valid split")
        })
        .collect();
    PartitionDecomposition::new(t.dims(), field, terms)
        .expect("terms built on tensor dims")
        .canonical()
}

/// Least flattening rank over the allowed splits, with its witness.
pub fn best_flattening(t: &Tensor, kind: RankKind) -> PartitionDecomposition {
    splits_for(t.order(), kind)
        .iter()
        .map(|s| flattening_witness(t, s))
        .min_by_key(PartitionDecomposition::len)
        .expect("order >= 2 has a split")
}

fn check_order(t: &Tensor) -> Result<()> {
    if t.order() < 2 {
        return Err(Error::InvalidInput("rank needs a tensor of order >= 2".into()));
    }
    Ok(())
}

fn uses_elimination(t: &Tensor, opts: &SearchOptions) -> bool {
    t.order() == 2 && opts.strategy == Strategy::Auto
}

/// Decides whether `t` has partition (or slice) rank at most `r`.
pub fn rank_at_most(
    t: &Tensor,
    r: usize,
    kind: RankKind,
    opts: &SearchOptions,
) -> Result<Decision> {
    check_order(t)?;
    if t.is_zero() {
        return Ok(Decision {
            holds: true,
            witness: Some(PartitionDecomposition::empty(t.dims(), t.field())),
            nodes: 0,
        });
    }
    let ub = best_flattening(t, kind);
    if r >= ub.len() {
        return Ok(Decision {
            holds: true,
            witness: Some(ub),
            nodes: 0,
        });
    }
    if r == 0 || uses_elimination(t, opts) {
        return Ok(Decision {
            holds: false,
            witness: None,
            nodes: 0,
        });
    }
    if !t.field().is_finite() {
        return Err(Error::LowerBoundUnavailable { upper: ub.len() });
    }
    let tp = build_problem(t, kind, opts.deterministic)?;
    let mut budget = NodeBudget::new(opts.budget);
    let found = search::search(&tp.problem, r, &tp.order, &mut budget)?;
    let nodes = budget.used();
    Ok(match found {
        Some(f) => Decision {
            holds: true,
            witness: Some(witness_from_found(t, &tp, f)),
            nodes,
        },
        None => Decision {
            holds: false,
            witness: None,
            nodes,
        },
    })
}

pub fn prank_at_most(t: &Tensor, r: usize, opts: &SearchOptions) -> Result<Decision> {
    rank_at_most(t, r, RankKind::Partition, opts)
}

/// Exact rank by iterative deepening; over Q with order >= 3 the value is
/// only a witnessed upper bound.
pub fn rank(t: &Tensor, kind: RankKind, opts: &SearchOptions) -> Result<RankCertificate> {
    check_order(t)?;
    let ub = if t.is_zero() {
        PartitionDecomposition::empty(t.dims(), t.field())
    } else {
        best_flattening(t, kind)
    };
    if ub.is_empty() {
        return Ok(RankCertificate {
            value: 0,
            witness: ub,
            lower_bound: LowerBound::ExhaustiveSearch,
            nodes: 0,
        });
    }
    if uses_elimination(t, opts) {
        return Ok(RankCertificate {
            value: ub.len(),
            witness: ub,
            lower_bound: LowerBound::MatrixRank,
            nodes: 0,
        });
    }
    if !t.field().is_finite() {
        let lower_bound = if ub.len() == 1 {
            LowerBound::ExhaustiveSearch
        } else {
            LowerBound::None
        };
        return Ok(RankCertificate {
            value: ub.len(),
            witness: ub,
            lower_bound,
            nodes: 0,
        });
    }
    let tp = build_problem(t, kind, opts.deterministic)?;
    let mut budget = NodeBudget::new(opts.budget);
    for r in 1..ub.len() {
        if let Some(f) = search::search(&tp.problem, r, &tp.order, &mut budget)? {
            let witness = witness_from_found(t, &tp, f);
            return Ok(RankCertificate {
                value: witness.len(),
                witness,
                lower_bound: LowerBound::ExhaustiveSearch,
                nodes: budget.used(),
            });
        }
    }
    Ok(RankCertificate {
        value: ub.len(),
        witness: ub,
        lower_bound: LowerBound::ExhaustiveSearch,
        nodes: budget.used(),
    })
}

pub fn prank(t: &Tensor, opts: &SearchOptions) -> Result<RankCertificate> {
    rank(t, RankKind::Partition, opts)
}

pub fn slice_rank(t: &Tensor, opts: &SearchOptions) -> Result<RankCertificate> {
    rank(t, RankKind::Slice, opts)
}

/// Matrix rank of an order-2 tensor.
pub fn matrix_rank(t: &Tensor) -> usize {
    as_matrix(t).rank()
}

pub(crate) fn as_matrix(t: &Tensor) -> ExactMatrix {
    assert_eq!(t.order(), 2, "matrix expected");
    ExactMatrix::from_vec(t.dims()[0], t.dims()[1], t.field(), t.entries().to_vec())
        .expect("shape matches")
}
