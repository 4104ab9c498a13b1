use num_complex::Complex64;

/// Errors produced by the numerical kernels and the micro-macro engines.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("non-finite entry at ({row},{col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not symmetric (relative asymmetry {asymmetry:.3e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("matrix is not positive definite (minimal eigenvalue {min_eigenvalue:.6e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("drift is not Hurwitz: eigenvalue {eigenvalue} has nonnegative real part")]
    NotHurwitz { eigenvalue: Complex64 },

    #[error("eigenvalue iteration did not converge within the {budget}-sweep budget")]
    EigenNonConvergence { budget: usize },

    #[error("singular linear system: {0}")]
    SingularSystem(String),

    #[error("matching infeasible: {0}")]
    MatchingInfeasible(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("spectrum out of implemented scope: {0}")]
    UnsupportedSpectrum(String),

    #[error("discrete iteration unstable: spectral radius {radius} >= 1")]
    UnstableDiscretization { radius: f64 },

    #[error("dimension {dim} exceeds supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
