use thiserror::Error;

/// Errors shared by the whole library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch ({context}): expected {expected}, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("probability {value} outside {range}")]
    ProbabilityRange { value: f64, range: &'static str },

    #[error("support index {index} out of range for dimension {n}")]
    IndexRange { index: usize, n: usize },

    #[error("support must be strictly increasing (saw {prev} then {next})")]
    SupportOrder { prev: usize, next: usize },

    #[error("matrix row {line} has {got} entries, expected {expected}")]
    RaggedRow {
        line: usize,
        expected: usize,
        got: usize,
    },

    #[error("matrix row {line} contains {ch:?}; only '0' and '1' are allowed")]
    InvalidBitChar { line: usize, ch: char },

    #[error("column support of the sampling matrix exceeds the contact matrix at column {col}")]
    SupportNotContained { col: usize },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("message length {got} does not match code dimension {expected}")]
    MessageLength { expected: usize, got: usize },

    #[error("cannot enumerate {requested} messages, code has only {available}")]
    MessageCount { requested: u128, available: u128 },

    #[error("enumeration guard exceeded: {work} > {limit}")]
    GuardExceeded { work: u128, limit: u128 },

    #[error("infeasible parameters: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
