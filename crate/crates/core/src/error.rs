//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Two dates (or times) supplied in the wrong order.
    #[error("ordering error: {0}")]
    Ordering(String),

    #[error("invalid date: {0}")]
    InvalidDate(String),

    #[error("invalid tenor: {0}")]
    InvalidTenor(String),

    #[error("schedule error: {0}")]
    Schedule(String),

    /// Malformed input row. `line` is 1-based and counts the header.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("duplicate quote: {0}")]
    Duplicate(String),

    #[error("missing quote: {0}")]
    MissingQuote(String),

    #[error("calibration failed for {instrument}: {reason}")]
    Calibration { instrument: String, reason: String },

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("leg kind error: {0}")]
    LegKind(String),

    #[error("curve coverage error: {0}")]
    Coverage(String),

    #[error("insufficient data: {0}")]
    Insufficient(String),

    #[error("alignment error: {0}")]
    Alignment(String),

    #[error("inversion error: {0}")]
    Inversion(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
