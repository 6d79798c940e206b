use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative evaluation ran out of budget before reaching its tolerance.
    #[error(
        "no convergence after {evals} evaluations: best estimate {estimate} \
         with error bound {error_bound:e}"
    )]
    Convergence {
        estimate: Complex64,
        error_bound: f64,
        evals: usize,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
