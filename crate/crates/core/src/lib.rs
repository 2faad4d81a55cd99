//! Unit-consistent generalized inverses, unit-invariant singular value
//! decompositions and the diagonal balancing they are built on.
//!
//! The unit-consistent inverse `ginv` satisfies
//! `ginv(D·A·E) = E⁻¹·ginv(A)·D⁻¹` for arbitrary nonsingular diagonal `D`
//! and `E`, the way the Moore-Penrose inverse commutes with unitary changes
//! of coordinates.

pub mod cli;
pub mod decomp;
pub mod error;
pub mod inverses;
pub mod matrix;
pub mod scaling;

pub use decomp::{
    left_ui_svd, si_eigenvalues, ui_hadamard_signature, ui_signature, ui_singular_values, ui_svd,
    LeftUiSvd, UiSvdFactors,
};
pub use error::{Error, Result};
pub use inverses::{assemble_ginv, ginv, linv, mixed_block_inverse, rinv, BlockPartition};
pub use matrix::{
    pinv, pinv_rank_factorization, rank, svd, DiagonalMatrix, Matrix, Scalar, Svd, ToleranceConfig,
    C64,
};
pub use scaling::{
    closed_form_general_scale, dscale, left_scale, sinkhorn_scale, size_of, GeneralScaling,
    SizeFunction,
};
