//! Exact partition rank, slice rank and strength computations at desk scale.
//!
//! Tensors and polynomials live over `GF(p)` or `Q`. Rank decisions are made
//! by exhaustive search over finite fields and come with explicit witnesses.

pub mod algebra;
pub mod bridge;
pub mod equations;
pub mod error;
pub mod json;
pub mod nullcone;
pub mod rank;
pub mod tensor;

pub use algebra::{ExactMatrix, Field, Scalar};
pub use num_bigint::BigUint;
pub use error::{Error, Result};
pub use tensor::{AxisSplit, IndexSubsets, Tensor};
