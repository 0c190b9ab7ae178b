use thiserror::Error;

use crate::nmr::sequence::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter lies outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// An operation was called with an argument of the wrong variant,
    /// e.g. enumerating a continuous rotation set.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },
}
