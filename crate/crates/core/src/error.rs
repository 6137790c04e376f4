use thiserror::Error;

/// Errors raised by the channel, scheme, solver and experiment layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("infeasible channel gain for user {user}: {value} (must be > 0)")]
    InfeasibleGain { user: usize, value: f64 },

    #[error("brute-force search over {candidates} candidates exceeds the enumeration budget of {budget}")]
    EnumerationBudget { candidates: String, budget: u64 },

    #[error("invalid {field}: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("no records to summarize")]
    EmptyRecords,

    #[error("csv report: {0}")]
    Csv(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        field,
        reason: reason.into(),
    }
}
