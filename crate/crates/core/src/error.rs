use thiserror::Error;

use crate::radial::EigenResult;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("potential `{0}` is not confining")]
    NonConfining(String),

    /// The eigensolver could not meet its tolerance. The best available
    /// result is attached so callers can inspect how close it got.
    #[error(
        "eigensolver did not converge: energy {:.10} with error estimate {:.3e} (R = {}, n = {})",
        best.energy, best.error_estimate, best.grid_used.box_radius, best.grid_used.points
    )]
    NotConverged { best: Box<EigenResult> },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("trial function under-resolved: {0}")]
    UnderResolved(String),

    #[error("bound ordering violated: lower {lower} > upper {upper}")]
    SandwichViolation { lower: f64, upper: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
