use thiserror::Error;

/// Errors raised by the algebraic and numeric kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("structure error: {0}")]
    Structure(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("composition error: {0}")]
    Composition(String),
    #[error("inconsistent path: {0}")]
    InconsistentPath(String),
    #[error("format error at line {line}: {msg}")]
    Format { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

pub(crate) fn structure<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Structure(msg.into()))
}
