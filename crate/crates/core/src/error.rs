use thiserror::Error;

/// Errors produced by the exact and numeric engines.
#[derive(Debug, Error)]
pub enum Error {
    /// An operation was called on a quantic whose order is outside its domain.
    #[error("{operation} requires {requirement} (got N = {order})")]
    Precondition {
        operation: &'static str,
        requirement: &'static str,
        order: usize,
    },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    /// A normalizing division left a remainder. Never expected; indicates a bug.
    #[error("normalization of {what} by {divisor} is not exact")]
    InexactDivision { what: &'static str, divisor: u64 },

    /// An identity that must hold exactly produced a nonzero residual.
    #[error("identity violated: {0}")]
    IdentityViolated(&'static str),

    #[error("invalid quantic: {0}")]
    InvalidQuantic(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn require_order(
    operation: &'static str,
    requirement: &'static str,
    order: usize,
    min: usize,
) -> Result<()> {
    if order < min {
        return Err(Error::Precondition {
            operation,
            requirement,
            order,
        });
    }
    Ok(())
}
