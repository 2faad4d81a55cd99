//! Unit-consistent generalized inverses.
//!
//! - [`linv`]: consistent under left diagonal changes of units,
//!   `linv(D·A) = linv(A)·D⁻¹`.
//! - [`rinv`]: consistent under right diagonal changes of units,
//!   `rinv(A·D) = D⁻¹·rinv(A)`.
//! - [`ginv`]: consistent under both, `ginv(D·A·E) = E⁻¹·ginv(A)·D⁻¹`.
//! - [`mixed_block_inverse`]: consistent under block transforms
//!   `blockdiag(D, R)` mixing a diagonal and an orthonormal block.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::matrix::{pinv, Matrix, Scalar, ToleranceConfig};
use crate::scaling::{dscale, left_scale, GeneralScaling};

/// Left unit-consistent generalized inverse, `pinv(D_L·A)·D_L` with `D_L`
/// the left scale function of `A`.
pub fn linv<T: Scalar>(a: &Matrix<T>, cfg: &ToleranceConfig) -> Result<Matrix<T>> {
    let dl = left_scale(a).cast::<T>();
    let p = pinv(&dl.left_mul(a), cfg)?;
    Ok(dl.right_mul(&p))
}

/// Right unit-consistent generalized inverse, the conjugate-transpose dual
/// of [`linv`].
pub fn rinv<T: Scalar>(a: &Matrix<T>, cfg: &ToleranceConfig) -> Result<Matrix<T>> {
    Ok(linv(&a.adjoint(), cfg)?.adjoint())
}

/// Unit-consistent generalized inverse, `diag(dr)·pinv(X)·diag(dl)` where
/// `(dl, dr, X)` is the general scaling of `A`.
pub fn ginv<T: Scalar>(a: &Matrix<T>, cfg: &ToleranceConfig) -> Result<Matrix<T>> {
    assemble_ginv(&dscale(a, cfg)?, cfg)
}

/// Assembles the unit-consistent inverse from a precomputed scaling as
/// `pinv(X) ∘ (dl·drᵀ)ᵀ`.
///
/// Any scaling pair producing the same balanced matrix yields the same
/// result.
pub fn assemble_ginv<T: Scalar>(
    scaling: &GeneralScaling<T>,
    cfg: &ToleranceConfig,
) -> Result<Matrix<T>> {
    let p = pinv(&scaling.scaled, cfg)?;
    let (n, m) = p.shape();
    let weights = DMatrix::from_fn(n, m, |j, i| T::from_real(scaling.dr[j] * scaling.dl[i]));
    Ok(p.hadamard(&Matrix::wrap(weights)))
}

/// Split of a square operand into `[[W, X], [Y, Z]]`, with `W` of order
/// `m_top` (incommensurate-unit variables) and `Z` of order `n_bottom`
/// (Euclidean variables).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    pub m_top: usize,
    pub n_bottom: usize,
}

impl BlockPartition {
    pub fn new(m_top: usize, n_bottom: usize) -> Result<Self> {
        if m_top == 0 || n_bottom == 0 {
            return Err(Error::InvalidPartition(format!(
                "both blocks must be nonempty, got {m_top} + {n_bottom}"
            )));
        }
        Ok(Self { m_top, n_bottom })
    }

    /// Partition of an order-`order` operand with `m_top` leading variables.
    pub fn split(order: usize, m_top: usize) -> Result<Self> {
        if m_top >= order {
            return Err(Error::InvalidPartition(format!(
                "top block {m_top} must be smaller than the order {order}"
            )));
        }
        Self::new(m_top, order - m_top)
    }

    pub fn order(&self) -> usize {
        self.m_top + self.n_bottom
    }
}

/// Generalized inverse consistent under `A → T₁·A·T₂` for
/// `T = blockdiag(D, R)`, `D` nonsingular diagonal and `R` orthonormal:
///
/// ```text
/// [ ginv(W − X·Z⁺·Y)          −ginv(W)·X·(Z − Y·ginv(W)·X)⁺ ]
/// [ −Z⁺·Y·ginv(W − X·Z⁺·Y)     (Z − Y·ginv(W)·X)⁺           ]
/// ```
pub fn mixed_block_inverse<T: Scalar>(
    a: &Matrix<T>,
    part: BlockPartition,
    cfg: &ToleranceConfig,
) -> Result<Matrix<T>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            op: "mixed_block_inverse",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if part.m_top == 0 || part.n_bottom == 0 || part.order() != a.rows() {
        return Err(Error::InvalidPartition(format!(
            "{} + {} does not split an operand of order {}",
            part.m_top,
            part.n_bottom,
            a.rows()
        )));
    }
    let (m, n) = (part.m_top, part.n_bottom);
    let w = a.block(0, 0, m, m);
    let x = a.block(0, m, m, n);
    let y = a.block(m, 0, n, m);
    let z = a.block(m, m, n, n);

    let z_pinv = pinv(&z, cfg)?;
    let w_ginv = ginv(&w, cfg)?;

    let top_left = ginv(&(&w - &(&(&x * &z_pinv) * &y)), cfg)?;
    let bottom_right = pinv(&(&z - &(&(&y * &w_ginv) * &x)), cfg)?;
    let top_right = -&(&(&w_ginv * &x) * &bottom_right);
    let bottom_left = -&(&(&z_pinv * &y) * &top_left);

    Matrix::from_blocks(&top_left, &top_right, &bottom_left, &bottom_right)
}
