use thiserror::Error;

use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not supported: {0}")]
    Unsupported(String),
    #[error("malformed document: {0}")]
    Format(String),
    #[error("input too large: {0}")]
    TooLarge(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
