//! Exact scalar arithmetic and dense linear algebra.

mod matrix;
mod scalar;

pub use matrix::{ExactMatrix, Rref, RowSpace};
pub(crate) use matrix::gauss_jordan_mod;
pub use scalar::{denominator_lcm, integer_content, Field, Scalar, MAX_PRIME};
pub(crate) use scalar::inv_mod;
