use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The request is well defined but outside the domain where the ladder
    /// relations are established (e.g. raising from `m < 0`).
    #[error("outside validated domain: {0}")]
    OutOfDomain(String),

    #[error("mismatched field configuration: B = {left} vs B = {right}")]
    FieldMismatch { left: f64, right: f64 },

    #[error("integrand is not finite at node {node}")]
    NonFinite { node: f64 },

    #[error("tridiagonal eigensolver did not converge within {0} iterations")]
    NoConvergence(usize),
}
