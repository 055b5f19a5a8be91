use thiserror::Error;

/// Errors shared by the sampling, quadrature and norm layers.
#[derive(Debug, Clone, Error)]
pub enum FracError {
    #[error("interval must satisfy t0 < t1, got [{t0}, {t1}]")]
    InvalidInterval { t0: f64, t1: f64 },

    #[error("evaluation at a singular point t = {t}")]
    EvalAtSingularity { t: f64 },

    #[error("spec is not integrable: {0}")]
    NonIntegrableSpec(String),

    #[error("no order-{order} derivative: {reason}")]
    NotDifferentiable { order: u32, reason: String },

    #[error("fractional order must be positive and finite, got {alpha}")]
    InvalidOrder { alpha: f64 },

    #[error("power exponent must be > -1, got {gamma}")]
    InvalidExponent { gamma: f64 },

    #[error("grid too coarse: need at least {required} cells, got {actual}")]
    GridTooCoarse { required: usize, actual: usize },

    #[error("parameters outside the theorem hypothesis: {0}")]
    ParamsOutOfScope(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("grid mismatch: operands must share the same interval and node count")]
    GridMismatch,
}

pub type Result<T> = std::result::Result<T, FracError>;
