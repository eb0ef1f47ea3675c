//! Error type shared across the crate.

use alloc::string::String;
use alloc::vec::Vec;

/// Errors produced by model construction, fitting, sampling and diagnostics.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A dataset or model constructor was given inconsistent inputs.
    #[error("invalid model: {0}")]
    InvalidModel(String),

    /// The parameter lies outside the admissible domain of the family.
    #[error("domain violation: {0}")]
    DomainViolation(String),

    /// The operation is not defined for this family.
    #[error("unsupported operation: {0}")]
    Unsupported(&'static str),

    /// Newton iteration failed; carries the last iterate.
    #[error("no convergence after {iterations} iterations (grad norm {grad_norm:e})")]
    NonConvergence {
        iterations: usize,
        grad_norm: f64,
        last_iterate: Vec<f64>,
    },

    /// The drawn multiplier weights make the weighted likelihood degenerate;
    /// the caller should resample.
    #[error("degenerate bootstrap draw: {0}")]
    DegenerateDraw(&'static str),

    /// Too many degenerate draws while building one bootstrap sample.
    #[error("pathological sample: {resamples} resamples exceeded the budget of {budget}")]
    PathologicalSample { resamples: usize, budget: usize },

    /// A matrix that must be invertible is numerically singular.
    #[error("singular matrix: {0}")]
    SingularMatrix(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
