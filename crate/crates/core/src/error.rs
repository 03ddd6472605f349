use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid unit system: m_omega must be finite and positive, got {0}")]
    InvalidUnits(f64),

    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(String),

    #[error("eigenvalue iteration did not converge for Gauss-Hermite order {order}")]
    ConvergenceFailure { order: usize },

    #[error("marginal density {value:e} at {point} is below the degenerate floor")]
    DegenerateMarginal { point: f64, value: f64 },

    #[error("no sign change of {criterion} found in [0, pi]")]
    NoRootInRange { criterion: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
