//! Unit-invariant and scale-invariant spectral decompositions.
//!
//! The factors `D`, `U`, `V`, `E` of a UI-SVD are not unique (scaling family
//! freedom on disconnected supports, phase freedom of singular vectors);
//! only the singular values, the reconstruction and derived products are
//! contractual.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::inverses::ginv;
use crate::matrix::{backend, svd, DiagonalMatrix, Matrix, Scalar, Svd, ToleranceConfig, C64};
use crate::scaling::{dscale, left_scale};

/// `A = D · U · diag(s) · V* · E`.
#[derive(Clone, Debug)]
pub struct UiSvdFactors<T: Scalar> {
    /// Inverse of the left general scaling.
    pub d: DiagonalMatrix<f64>,
    pub u: Matrix<T>,
    /// Unit-invariant singular values, descending.
    pub s: Vec<f64>,
    pub v: Matrix<T>,
    /// Inverse of the right general scaling.
    pub e: DiagonalMatrix<f64>,
}

impl<T: Scalar> UiSvdFactors<T> {
    pub fn reconstruct(&self) -> Matrix<T> {
        let inner = Svd {
            u: self.u.clone(),
            s: self.s.clone(),
            v: self.v.clone(),
        }
        .reconstruct();
        self.e.cast().right_mul(&self.d.cast().left_mul(&inner))
    }

    /// `E⁻¹ · V · diag(s)⁺ · U* · D⁻¹`, the unit-consistent inverse.
    pub fn inverse(&self, cfg: &ToleranceConfig) -> Result<Matrix<T>> {
        let inner = Svd {
            u: self.u.clone(),
            s: self.s.clone(),
            v: self.v.clone(),
        }
        .pseudo_inverse(cfg);
        let d_inv = self.d.inverse()?.cast();
        let e_inv = self.e.inverse()?.cast();
        Ok(d_inv.right_mul(&e_inv.left_mul(&inner)))
    }
}

/// Unit-invariant singular value decomposition.
pub fn ui_svd<T: Scalar>(a: &Matrix<T>, cfg: &ToleranceConfig) -> Result<UiSvdFactors<T>> {
    let scaling = dscale(a, cfg)?;
    let Svd { u, s, v } = svd(&scaling.scaled)?;
    Ok(UiSvdFactors {
        d: scaling.left().inverse()?,
        u,
        s,
        v,
        e: scaling.right().inverse()?,
    })
}

/// Singular values of the balanced matrix, descending.
pub fn ui_singular_values<T: Scalar>(a: &Matrix<T>, cfg: &ToleranceConfig) -> Result<Vec<f64>> {
    Ok(svd(&dscale(a, cfg)?.scaled)?.s)
}

/// `A = D · U · diag(s) · V*` with `D` the inverse of the left scale
/// function.
#[derive(Clone, Debug)]
pub struct LeftUiSvd<T: Scalar> {
    pub d: DiagonalMatrix<f64>,
    pub u: Matrix<T>,
    /// Left unit-invariant singular values, descending. Invariant under left
    /// nonsingular diagonal and right unitary transformations.
    pub s: Vec<f64>,
    pub v: Matrix<T>,
}

impl<T: Scalar> LeftUiSvd<T> {
    pub fn reconstruct(&self) -> Matrix<T> {
        let inner = Svd {
            u: self.u.clone(),
            s: self.s.clone(),
            v: self.v.clone(),
        }
        .reconstruct();
        self.d.cast().left_mul(&inner)
    }
}

pub fn left_ui_svd<T: Scalar>(a: &Matrix<T>, _cfg: &ToleranceConfig) -> Result<LeftUiSvd<T>> {
    let dl = left_scale(a);
    let Svd { u, s, v } = svd(&dl.cast().left_mul(a))?;
    Ok(LeftUiSvd {
        d: dl.inverse()?,
        u,
        s,
        v,
    })
}

/// Eigenvalues of the balanced matrix of a square operand, in no particular
/// order. Invariant under `D·A·E` whenever `D·E` is nonnegative real.
pub fn si_eigenvalues<T: Scalar>(a: &Matrix<T>, cfg: &ToleranceConfig) -> Result<Vec<C64>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            op: "si_eigenvalues",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let scaled = dscale(a, cfg)?.scaled;
    let complex: DMatrix<C64> = scaled.as_nalgebra().map(|x| {
        let (re, im) = (x.real(), x.imaginary());
        C64::new(re, im)
    });
    backend::eigenvalues(&complex).ok_or(Error::EigenFailed)
}

/// The `k` largest unit-invariant singular values.
pub fn ui_signature<T: Scalar>(a: &Matrix<T>, k: usize, cfg: &ToleranceConfig) -> Result<Vec<f64>> {
    let limit = a.rows().min(a.cols());
    if k == 0 || k > limit {
        return Err(Error::InvalidArgument(format!(
            "signature length must be in 1..={limit}, got {k}"
        )));
    }
    let mut s = ui_singular_values(a, cfg)?;
    s.truncate(k);
    Ok(s)
}

/// Row-major vectorization of `A ∘ ginv(A)ᵀ` (plain transpose), invariant
/// under `A → D·A·E` for nonsingular diagonals.
pub fn ui_hadamard_signature<T: Scalar>(a: &Matrix<T>, cfg: &ToleranceConfig) -> Result<Vec<T>> {
    let g = ginv(a, cfg)?;
    Ok(a.hadamard(&g.transpose()).to_row_major())
}
