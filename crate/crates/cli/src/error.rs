use schur_core::SchurError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] SchurError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed matrix file: {0}")]
    Format(String),
    #[error("invalid query: {0}")]
    Query(String),
}

pub type CliResult<T> = Result<T, CliError>;
