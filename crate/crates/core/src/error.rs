use thiserror::Error;

/// Errors produced by the numerical kernels and the physics layers built on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed arguments: empty inputs, mismatched lengths, bad parameters.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// An iterative method did not converge.
    #[error("numerical failure: {0}")]
    Numeric(String),
    /// A callback returned a non-finite value at a quadrature or contour node.
    #[error("non-finite integrand at node {index} (z = {re} + {im}i)")]
    Evaluation { index: usize, re: f64, im: f64 },
    /// A polynomial state has a repeated or otherwise degenerate zero.
    #[error("degenerate state: {0}")]
    Degenerate(String),
    /// The requested form is recognised but not handled by this routine.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A time-stepper could not preserve particle ordering.
    #[error("integration failure at step {step}: {reason}")]
    IntegrationFailure { step: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
