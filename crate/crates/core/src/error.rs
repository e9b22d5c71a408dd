use thiserror::Error;

use crate::series::parse::ParseError;

/// Errors raised across the toolkit.
///
/// Each variant maps to one failure class so the command surface can choose
/// an exit status without inspecting message text.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PinchError {
    /// Non-finite, non-positive or otherwise out-of-domain numeric input.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested hyperbolic figure does not exist.
    #[error("geometric infeasibility: {0}")]
    Infeasible(String),

    /// The hypothesis of a length-comparison estimate fails.
    #[error("out of regime: {0}")]
    OutOfRegime(String),

    /// Caller supplied inconsistent arguments (arity, ordering of indices, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// Magnitude left the representable range guarded by the overflow limit.
    #[error("precision error: {what} (value {value:e}, guard {guard:e})")]
    Precision {
        what: String,
        value: f64,
        guard: f64,
    },

    /// Geometric factor of a Cauchy envelope is undefined (|t_k| >= r).
    #[error("envelope divergence: |t_{index}| = {abs_t:e} is not below r = {radius:e}")]
    Divergence {
        index: usize,
        abs_t: f64,
        radius: f64,
    },

    /// Germ has no stored monomials.
    #[error("degenerate germ: no nonzero stored monomials")]
    DegenerateGerm,

    /// Invalid configuration or stratum signature.
    #[error("validation error: {0}")]
    Validation(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, PinchError>;
