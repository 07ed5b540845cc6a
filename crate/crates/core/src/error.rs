use thiserror::Error;

/// Errors returned by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{context}: dimension mismatch (expected {expected}, found {found})")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid sparse stage: {0}")]
    InvalidStage(String),

    #[error("invalid parameter range: {0}")]
    InvalidRange(String),

    #[error("bin index {bin} out of range for a {size}-point transform")]
    BinOutOfRange { bin: usize, size: usize },

    #[error("invalid chain configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
