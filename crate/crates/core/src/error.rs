use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows, row {row} has {cols} entries")]
    NotSquare { rows: usize, row: usize, cols: usize },

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max |m - m^dagger| = {defect:.3e})")]
    NotHermitian { defect: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("invalid probability vector: {0}")]
    InvalidProbability(String),

    #[error("invalid entropy parameters: {0}")]
    InvalidEntropyParams(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("state is not Bell-diagonal: {0}")]
    NotBellDiagonal(String),

    #[error("measurement direction is not a unit vector (norm^2 = {norm_sq})")]
    NotUnitDirection { norm_sq: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("discord does not change sign on [{lo}, {hi}] (D(lo) = {f_lo:.6e}, D(hi) = {f_hi:.6e})")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("CSV row {row} violates signed = marginal + conditional - joint (residual {residual:.3e})")]
    InconsistentRow { row: usize, residual: f64 },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NoSignChange { .. } | Error::NotBellDiagonal(_) | Error::InconsistentRow { .. } => 3,
            Error::Io { .. } => 1,
            _ => 2,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
