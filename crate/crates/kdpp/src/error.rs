//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Standardization and moment estimates need at least two rows.
    #[error("dataset must contain at least 2 rows, got {0}")]
    EmptyData(usize),

    /// A data or kernel matrix contained a NaN or infinity.
    #[error("non-finite value at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("kernel bandwidth must be positive, got {0}")]
    InvalidBandwidth(f64),

    #[error("histogram entries must be nonnegative, got {value} at ({row}, {col})")]
    NegativeHistogram { row: usize, col: usize, value: f64 },

    /// Precomputed kernel input failed symmetry validation.
    #[error("matrix is not symmetric: |A - A^T| reaches {max_asym} at ({row}, {col})")]
    NotSymmetric {
        row: usize,
        col: usize,
        max_asym: f64,
    },

    #[error(
        "iterative solver did not converge after {iterations} iterations (residual {residual})"
    )]
    ConvergenceFailure { iterations: usize, residual: f64 },

    #[error("requested rank {k} exceeds available rank {max}")]
    RankTooLarge { k: usize, max: usize },

    /// The ridge projector needs a PSD spectrum with positive mass.
    #[error("kernel matrix is not positive semidefinite to working precision (min eigenvalue {min_eig})")]
    SingularKernel { min_eig: f64 },

    /// The selected principal block K_CC could not be factorized.
    #[error("selected landmark block is numerically singular (pivot {pivot} at step {step})")]
    SingularBlock { step: usize, pivot: f64 },

    /// Re-orthonormalization lost a basis direction it should have kept.
    #[error("orthonormal basis lost rank during sampling (column norm {norm} at size {size})")]
    NumericalBreakdown { norm: f64, size: usize },

    #[error("landmark set is empty")]
    EmptyLandmarks,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("failed to parse '{token}' as a number (line {line})")]
    Parse { line: usize, token: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
