//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {message}")]
    InvalidParameter { field: &'static str, message: String },

    #[error("eigensolver failed (residual {residual:.3e})")]
    SolverFailure { residual: f64 },

    #[error("Fock cutoff n_max={n_max} not converged: {reason}")]
    NotConverged { n_max: usize, reason: String },

    #[error("vacuum is not a fixed point for gamma={gamma}, mu={mu}")]
    VacuumNotStationary { gamma: f64, mu: f64 },

    #[error("bracketing failure in {context}")]
    BracketingFailure { context: String },

    #[error("phase-space grid mismatch: {0}")]
    GridMismatch(String),

    #[error("Bloch parametrization requires N=1 (got N={0})")]
    RequiresSingleQubit(u32),

    #[error("empty grid: {0}")]
    EmptyGrid(&'static str),

    #[error("phase-space area grid under-resolved: {0}")]
    AreaUnderResolved(String),

    #[error("{0}")]
    Protocol(String),

    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
