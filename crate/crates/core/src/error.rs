//! Crate-wide error type.

/// Errors surfaced by kernels, solvers, projectors and the CLI layer.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("kernel `{kernel}`: argument {point} outside {what}")]
    Domain {
        kernel: String,
        point: f64,
        what: &'static str,
    },

    #[error("point not in the interior of dom f")]
    NotInInterior,

    #[error("point not in dom f")]
    NotInDomain,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("set does not intersect the kernel domain")]
    InfeasibleSet,

    #[error("objective is infinite on the whole bracket")]
    InfeasibleBracket,

    #[error("conjugate appears unbounded near {0}")]
    UnboundedConjugate(f64),

    #[error("solver failure: {0}")]
    SolverFailure(String),

    #[error("no convergence after {0} iterations")]
    NonConvergence(usize),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
