use thiserror::Error;

/// Errors produced by the numerical kernels and everything built on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("bracket [{lo}, {hi}] does not enclose a sign change")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("|t| = {t} is not inside the convergence radius {radius}")]
    OutsideRadius { t: f64, radius: f64 },

    #[error("series tail {tail:e} exceeds the allowed bound {bound:e}")]
    TailTooLarge { tail: f64, bound: f64 },

    #[error("skipped: t = {t} lies outside the convergence radius {radius}")]
    SkippedOutsideRadius { t: f64, radius: f64 },

    #[error("skipped: {0}")]
    Skipped(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
