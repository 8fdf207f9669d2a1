use thiserror::Error;

/// Errors surfaced by the analytic pipeline and the grid oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A reduced kernel does not describe a valid (normalizable, positive) state.
    #[error("invalid reduced state: {0}")]
    InvalidState(String),

    /// The Ermakov scale factor collapsed below the safety floor.
    #[error("scale factor collapsed: b = {b:.3e} at t = {t:.6}")]
    Singular { t: f64, b: f64 },

    /// Adaptive integration could not proceed.
    #[error("integration failure: {0}")]
    Integration(String),

    /// The traced block of the Gaussian exponent is numerically unusable.
    #[error("ill-conditioned marginalization block (cond = {cond:.3e})")]
    IllConditioned { cond: f64 },

    /// The requested grid cannot resolve the kernel under test.
    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    /// The dense eigensolver did not converge.
    #[error("eigensolver failed: LAPACK info = {0}")]
    Eigensolver(i32),
}

pub type Result<T> = std::result::Result<T, Error>;
