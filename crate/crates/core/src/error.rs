use thiserror::Error;

/// Errors raised by constructions, parsers and searches.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed expression: {0}")]
    Malformed(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("incoherent functor data: {sigma} <= {tau} but the face of F({tau}) differs from F({sigma})")]
    Coherence { sigma: String, tau: String },
    #[error("category has loops; a truncation dimension is required")]
    MustTruncate,
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("index category is not left filtered: {0}")]
    NotFiltered(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
