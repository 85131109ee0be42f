//! Crate-wide error type.

use thiserror::Error;

use crate::units::Dimension;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input fell outside the domain of a formula.
    #[error("domain error: {0}")]
    Domain(String),

    /// Checked arithmetic between quantities of different dimensions.
    #[error("dimension mismatch: cannot {op} {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: Dimension,
        right: Dimension,
    },

    /// A matrix failed its unitarity check.
    #[error("matrix is not unitary: defect {defect:.3e} exceeds tolerance {tol:.3e}")]
    NonUnitary { defect: f64, tol: f64 },

    /// The adaptive integrator could not continue (step size underflow).
    #[error("integration failed at t = {t_reached:.6e} s: step size underflow")]
    IntegrationFailure { t_reached: f64 },

    /// A photon budget search hit its cap without reaching the target phase.
    #[error(
        "photon budget exceeded: {cap} photons reach only {phase_at_cap:.6e} rad"
    )]
    BudgetExceeded { cap: u64, phase_at_cap: f64 },

    /// A gate name could not be parsed.
    #[error("unknown gate: {0}")]
    UnknownGate(String),

    /// Qubit count outside the supported range.
    #[error("qubit count {n} outside supported range {min}..={max}")]
    QubitCount { n: usize, min: usize, max: usize },

    #[error("scenario file: {0}")]
    Io(#[from] std::io::Error),

    #[error("scenario file: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
