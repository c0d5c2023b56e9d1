use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SchurError {
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("size {size} exceeds the configured cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("zero denominator in {0}")]
    ZeroDenominator(String),
    #[error("malformed intermediate state: {0}")]
    MalformedState(String),
    #[error("oracle failure: {0}")]
    Oracle(String),
}

pub type SchurResult<T> = Result<T, SchurError>;
