use thiserror::Error;

/// Errors raised by the geometry, solver and algorithm layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OcoError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("inner solver did not converge after {iterations} iterations (residual {residual:e})")]
    Convergence { iterations: usize, residual: f64 },
    #[error("round {t} exceeds stream horizon {horizon}")]
    HorizonExceeded { t: usize, horizon: usize },
    #[error("comparator search requires a bounded domain")]
    UnboundedDomain,
    #[error("parameter error: {0}")]
    Param(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, OcoError>;
