//! Dense matrix foundation: storage, SVD, pseudoinverse and rank.

pub(crate) mod backend;
mod linalg;
mod tolerance;
mod types;

pub use linalg::{pinv, pinv_rank_factorization, rank, svd, Svd};
pub use tolerance::ToleranceConfig;
pub use types::{DiagonalMatrix, Matrix, Scalar, C64};
