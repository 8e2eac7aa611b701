use thiserror::Error;

/// Errors produced by the metric, fading and simulation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The channel gain is zero, so no finite energy delivers any data.
    #[error("infinite energy: zero channel gain cannot carry data")]
    InfiniteEnergy,

    /// The CPA cutoff gain sits at the top of the fading distribution, so
    /// transmission never occurs and conditional outage is undefined.
    #[error("degenerate cutoff: F_g(g_T) = 1 at g_T = {cutoff:e}; peak power too small for the target SNR")]
    DegenerateCutoff { cutoff: f64 },

    /// A single-coherence-block formula was used outside its regime.
    #[error("coherence regime violated: {0}")]
    RegimeViolation(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("{0} did not converge")]
    NoConvergence(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

/// Checks `value` is finite and strictly positive.
pub(crate) fn positive(name: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(domain(format!("{name} must be finite and > 0, got {value}")))
    }
}

/// Checks `value` is finite and nonnegative.
pub(crate) fn nonnegative(name: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(domain(format!("{name} must be finite and >= 0, got {value}")))
    }
}
