//! Experiment harness: commands, generators, reports and their verifier.

pub mod args;
pub mod commands;
pub mod generate;
pub mod report;
pub mod verify;

use subranks_core::Error as CoreError;

/// 0 success, 2 parse or input error, 3 budget exceeded, 4 hypothesis
/// violated, 1 anything else.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<CoreError>() {
            return match e {
                CoreError::BudgetExceeded { .. } | CoreError::SizeCapExceeded { .. } => 3,
                CoreError::HypothesisViolated(_) => 4,
                CoreError::Parse(_)
                | CoreError::InvalidInput(_)
                | CoreError::DimensionMismatch(_)
                | CoreError::IndexOutOfRange(_)
                | CoreError::FieldMismatch(_)
                | CoreError::UnsupportedField(_)
                | CoreError::NotFiniteField
                | CoreError::BadCharacteristic { .. }
                | CoreError::NotWeightHomogeneous { .. } => 2,
                _ => 1,
            };
        }
        if cause.downcast_ref::<serde_json::Error>().is_some() || cause.downcast_ref::<std::io::Error>().is_some() {
            return 2;
        }
    }
    1
}
