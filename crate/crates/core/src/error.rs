use thiserror::Error;

/// Errors raised by the algebraic routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("block A[X,Y] is not invertible")]
    SingularBlock,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("operation requires a finite field")]
    NotFiniteField,
    #[error("no lower bound available over the rationals for order >= 3; best upper bound is {upper}")]
    LowerBoundUnavailable { upper: usize },
    #[error("search budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("size cap of {cap} cells exceeded (needed {needed})")]
    SizeCapExceeded { cap: u128, needed: u128 },
    #[error("polynomial is not weight-homogeneous: {first} vs {second}")]
    NotWeightHomogeneous { first: String, second: String },
    #[error("weight of index {index} on axis {axis} is {weight}, need at least 2")]
    WeightTooLow { axis: usize, index: usize, weight: u32 },
    #[error("polynomial coefficients must be integral rationals")]
    NotIntegral,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("chain coefficient h_(k+1) evaluated to zero")]
    ChainEvaluationZero,
    #[error("characteristic {char} must be 0 or greater than {degree}")]
    BadCharacteristic { char: u32, degree: u32 },
    #[error("tensor is zero")]
    ZeroTensor,
    #[error("subspace dimensions sum to {sum}, need less than {n}")]
    DimensionSumTooLarge { sum: usize, n: usize },
    #[error("decomposition term on split {0:?} is not a slice term")]
    NonSliceTerm(Vec<usize>),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
