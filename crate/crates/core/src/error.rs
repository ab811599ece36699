use thiserror::Error;

/// Errors raised by the library.
///
/// The variants are coarse on purpose: the command-line front end maps each
/// one to a distinct exit status.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed text or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed input that violates a type invariant (unknown symbol,
    /// duplicate image, dimension mismatch, ...).
    #[error("invalid input: {0}")]
    Input(String),
    /// A hypothesis required by the operation does not hold.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    /// An internal consistency check failed.
    #[error("internal invariant failed: {0}")]
    Invariant(String),
    /// A search or enumeration exceeded its budget.
    #[error("resource budget exceeded: {0}")]
    Resource(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn hypothesis(msg: impl Into<String>) -> Self {
        Error::Hypothesis(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}
