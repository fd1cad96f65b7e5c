use thiserror::Error;

/// Errors raised by library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("elements live in different tori")]
    TorusMismatch,
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("malformed quasitriangulation: {0}")]
    Malformed(String),
    #[error("enumeration budget exceeded ({0} nodes)")]
    Budget(u64),
    #[error("zero element has no {0}")]
    ZeroElement(&'static str),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
