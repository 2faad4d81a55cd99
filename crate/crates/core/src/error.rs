use thiserror::Error;

/// Errors produced by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyMatrix { rows: usize, cols: usize },

    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {found}")]
    EntryCount {
        rows: usize,
        cols: usize,
        expected: usize,
        found: usize,
    },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("{op}: dimension mismatch, expected {expected}, found {found}")]
    DimensionMismatch {
        op: &'static str,
        expected: String,
        found: String,
    },

    #[error("{op}: matrix must be square, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("zero entry at ({row}, {col}); the closed-form scaling needs an elemental-nonzero matrix, use dscale instead")]
    ZeroEntry { row: usize, col: usize },

    #[error("diagonal entry {index} is zero, diagonal matrix is singular")]
    SingularDiagonal { index: usize },

    #[error("F*·A·G* is numerically singular, inputs are not a valid rank factorization")]
    InvalidRankFactorization,

    #[error("invalid size function: {0}")]
    InvalidSizeFunction(String),

    #[error("invalid block partition: {0}")]
    InvalidPartition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("balancing did not converge after {iterations} sweeps (dx = {dx:e})")]
    NonConvergence { iterations: usize, dx: f64 },

    #[error("singular value decomposition failed to converge")]
    SvdFailed,

    #[error("eigenvalue decomposition failed to converge")]
    EigenFailed,
}

pub type Result<T> = std::result::Result<T, Error>;
