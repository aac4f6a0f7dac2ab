//! Polynomials in tensor entries: weights and multilinearization, the
//! pullback kernel, closed-form bounds, and the nested chain together with
//! the decomposition it yields.

mod counting;
mod hchain;
mod poly;
mod pullback;
mod weight;

pub use counting::{
    binomial, bound_formula, check_counting_inequality, counting_inequality_at, dim_formulas, fd_gd,
    parameter_count, CountingMethod, CountingReport, DimFormulas, EXACT_BIT_BUDGET,
};
pub use hchain::{
    decompose_via_chain, extract_hchain, find_k, orbit_vanishes, orbit_vanishes_sampled,
    ChainDecomposition, HChain, Injection, OrbitResult, DEFAULT_ORBIT_BUDGET,
};
pub use poly::{Monomial, Poly, Var, VarSpace};
pub use pullback::{
    build_pullback_matrix, compose_with_budget, entry_monomials, find_vanishing_poly,
    parametrization_polys, vanishing_kernel, BudgetMode, BudgetVector, DEFAULT_SIZE_CAP,
};
pub use weight::{
    multilinearize, multilinearize_components, polarize, remove_unused_slices, weight_components,
    weight_of, WeightVector,
};
