use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("value out of representable range: {0}")]
    Range(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("critical point at z = {z}: |f'| = {deriv:e} below tolerance")]
    CriticalPoint { z: Complex64, deriv: f64 },

    #[error("invalid Mobius map: |ad - bc| = {0:e}")]
    DegenerateMobius(f64),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("integrator step size underflow at path parameter {param}")]
    Divergence { param: f64 },

    #[error("path passes within {distance:e} of singularity {pole}")]
    PathClearance { pole: Complex64, distance: f64 },

    #[error("invalid basis: Wronskian {0:e}")]
    InvalidBasis(f64),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("contour integral unresolved: distance to nearest integer {residual}")]
    UnresolvedContour { residual: f64 },

    #[error("a-point on the scan contour after {nudges} nudges")]
    BoundaryRoot { nudges: usize },

    #[error("ambiguous count: zero at interval endpoint {0}")]
    AmbiguousCount(f64),

    #[error("too many censored walks: {censored} of {walks}")]
    Censored { censored: usize, walks: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
