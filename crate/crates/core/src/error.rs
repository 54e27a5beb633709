use thiserror::Error;

use crate::numerics::ComplexValue;

pub type Result<T, E = ZetaError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum ZetaError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole at {0}")]
    Pole(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The cancellation-aware evaluation would need more working bits than allowed.
    #[error("precision budget exceeded: {needed} bits needed, {max} allowed")]
    PrecisionBudget { needed: u64, max: u32 },

    /// An iterative process stopped before meeting its tolerance. `best` is the
    /// last estimate it produced.
    #[error("{what} did not converge (best error estimate {error_estimate:e})")]
    NonConvergence {
        what: String,
        best: Option<Box<ComplexValue>>,
        error_estimate: f64,
    },

    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("series has zero constant term")]
    SingularSeries,

    #[error("overflow: {0}")]
    Overflow(String),
}

impl ZetaError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        ZetaError::Domain(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        ZetaError::InvalidArgument(msg.into())
    }

    pub(crate) fn no_convergence(what: impl Into<String>, best: Option<ComplexValue>, err: f64) -> Self {
        ZetaError::NonConvergence {
            what: what.into(),
            best: best.map(Box::new),
            error_estimate: err,
        }
    }
}
