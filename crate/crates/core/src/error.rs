use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("no point sampler for relation: {0}")]
    UnsupportedRelation(String),
    #[error("enumeration of {size} assignments exceeds the limit {limit}")]
    EnumerationTooLarge { size: u128, limit: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;
