//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong while validating inputs, assembling
/// operators, or solving.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid material: {0}")]
    InvalidMaterial(String),

    #[error("coupling number out of range: N = {0} must lie in [0, 1)")]
    CouplingOutOfRange(f64),

    #[error("shear ratio out of range: c2 = {0} must lie in (0, 1)")]
    ShearRatioOutOfRange(f64),

    #[error("invalid kernel configuration: {0}")]
    InvalidKernelConfig(String),

    #[error("separation out of range: |x| = {0} must lie in (0, 100]")]
    SeparationOutOfRange(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("quadrature failed to converge on [{a}, {b}] (estimated error {err:.3e})")]
    QuadratureFailure { a: f64, b: f64, err: f64 },

    #[error("singular system: pivot {pivot:.3e} at index {index} below threshold")]
    SingularMatrix { index: usize, pivot: f64 },

    #[error("solver residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },

    #[error("inadmissible sweep value at index {index}: {message}")]
    SweepValue { index: usize, message: String },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
