use nalgebra::{ComplexField, DMatrix};

use super::{Matrix, Scalar, ToleranceConfig};
use crate::error::{Error, Result};

/// Full singular value decomposition `A = U · diag(s) · V*`.
///
/// `u` is `m x m`, `v` is `n x n`, and `s` holds the `min(m, n)` singular
/// values in descending order. No sign or phase convention is imposed on the
/// singular vectors.
#[derive(Clone, Debug)]
pub struct Svd<T: Scalar> {
    pub u: Matrix<T>,
    pub s: Vec<f64>,
    pub v: Matrix<T>,
}

impl<T: Scalar> Svd<T> {
    /// `U · diag(s) · V*` using the leading `min(m, n)` columns.
    pub fn reconstruct(&self) -> Matrix<T> {
        let k = self.s.len();
        let (m, n) = (self.u.rows(), self.v.rows());
        let mut us = self.u.as_nalgebra().columns(0, k).into_owned();
        for (j, mut col) in us.column_iter_mut().enumerate() {
            col *= T::from_real(self.s[j]);
        }
        let vk = self.v.as_nalgebra().columns(0, k);
        let out = us * vk.adjoint();
        debug_assert_eq!(out.shape(), (m, n));
        Matrix::wrap(out)
    }

    /// `V · diag(s)⁺ · U*` where singular values at or below the rank
    /// threshold are treated as zero.
    pub fn pseudo_inverse(&self, cfg: &ToleranceConfig) -> Matrix<T> {
        let (m, n) = (self.u.rows(), self.v.rows());
        let s_max = self.s.first().copied().unwrap_or(0.0);
        let cutoff = cfg.rank_threshold(m, n, s_max);
        let mut out = DMatrix::<T>::zeros(n, m);
        for (k, &sk) in self.s.iter().enumerate() {
            if sk > cutoff {
                let vk = self.v.as_nalgebra().column(k);
                let uk = self.u.as_nalgebra().column(k);
                out += (vk * uk.adjoint()) * T::from_real(sk.recip());
            }
        }
        Matrix::wrap(out)
    }

    /// Number of singular values exceeding the rank threshold.
    pub fn rank(&self, cfg: &ToleranceConfig) -> usize {
        let (m, n) = (self.u.rows(), self.v.rows());
        let s_max = self.s.first().copied().unwrap_or(0.0);
        let cutoff = cfg.rank_threshold(m, n, s_max);
        self.s.iter().filter(|&&s| s > cutoff).count()
    }
}

/// Singular value decomposition with full unitary factors.
pub fn svd<T: Scalar>(a: &Matrix<T>) -> Result<Svd<T>> {
    let (u, s, v) = T::dense_svd(a.as_nalgebra()).ok_or(Error::SvdFailed)?;
    if s.iter().any(|x| !x.is_finite()) {
        return Err(Error::SvdFailed);
    }
    debug_assert!(s.windows(2).all(|w| w[0] >= w[1]));
    Ok(Svd {
        u: Matrix::wrap(u),
        s,
        v: Matrix::wrap(v),
    })
}

/// Moore-Penrose pseudoinverse via the SVD.
pub fn pinv<T: Scalar>(a: &Matrix<T>, cfg: &ToleranceConfig) -> Result<Matrix<T>> {
    Ok(svd(a)?.pseudo_inverse(cfg))
}

/// Numerical rank: count of singular values above the rank threshold.
pub fn rank<T: Scalar>(a: &Matrix<T>, cfg: &ToleranceConfig) -> Result<usize> {
    Ok(svd(a)?.rank(cfg))
}

/// Pseudoinverse of `A = F · G` from its rank factorization,
/// `G* · (F* · A · G*)⁻¹ · F*`.
///
/// The `r x r` core is inverted with a full-pivot LU, so this path shares no
/// code with [`pinv`] and serves as an independent check on it.
pub fn pinv_rank_factorization<T: Scalar>(
    f: &Matrix<T>,
    g: &Matrix<T>,
    cfg: &ToleranceConfig,
) -> Result<Matrix<T>> {
    if f.cols() != g.rows() {
        return Err(Error::DimensionMismatch {
            op: "pinv_rank_factorization",
            expected: format!("G with {} rows", f.cols()),
            found: format!("{} rows", g.rows()),
        });
    }
    let r = f.cols();
    let a = f * g;
    let fh = f.adjoint();
    let gh = g.adjoint();
    let core = (&(&fh * &a) * &gh).into_nalgebra();

    let lu = core.clone().full_piv_lu();
    let pivots = lu.u().diagonal().map(|x| x.modulus());
    let max_pivot = pivots.max();
    let min_pivot = pivots.min();
    let rel = cfg.rank_tol.unwrap_or(r as f64 * f64::EPSILON);
    if max_pivot.is_nan() || max_pivot <= 0.0 || min_pivot <= rel * max_pivot {
        return Err(Error::InvalidRankFactorization);
    }
    let inv = lu.try_inverse().ok_or(Error::InvalidRankFactorization)?;
    Ok(&(&gh * &Matrix::wrap(inv)) * &fh)
}
