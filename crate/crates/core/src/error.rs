//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the domain of the operation (pole, branch point, bad parameter).
    #[error("domain error: {0}")]
    Domain(String),
    /// A precondition of the operation does not hold for the given input.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// Iteration or quadrature did not reach the requested tolerance.
    #[error("no convergence: {0}")]
    NonConvergence(String),
    /// Result cannot be represented in double precision.
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
    pub(crate) fn nonconv(msg: impl Into<String>) -> Self {
        Error::NonConvergence(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
