use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("invalid root system: {0}")]
    InvalidSystem(String),

    #[error("infimum of an empty family is undefined")]
    EmptyFamily,

    #[error("subset enumeration guard exceeded: rank {rank} > limit {limit}")]
    GuardExceeded { rank: usize, limit: usize },

    #[error("invalid root datum: {0}")]
    BadRootDatum(String),

    #[error("invalid step function: {0}")]
    BadFunction(String),

    /// Raised when a computed retraction fails its own certificate check.
    /// This cannot happen for a positive-definite Gram matrix; seeing it
    /// means an arithmetic bug, not bad input.
    #[error("internal certificate failure: {0}")]
    Certificate(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
