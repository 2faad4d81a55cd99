//! Dense SVD and eigenvalue kernels, delegated to faer.

use faer::Mat;
use nalgebra::DMatrix;

use super::C64;

/// `(U, s, V)` with full square factors and `s` nonincreasing.
pub(crate) type RawSvd<T> = (DMatrix<T>, Vec<f64>, DMatrix<T>);

fn to_faer<T: faer::traits::ComplexField + Copy>(a: &DMatrix<T>) -> Mat<T> {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
}

fn from_faer<T: faer::traits::ComplexField + Copy + nalgebra::Scalar>(
    a: faer::MatRef<'_, T>,
) -> DMatrix<T> {
    DMatrix::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
}

pub(crate) fn svd<T>(a: &DMatrix<T>, real: impl Fn(T) -> f64) -> Option<RawSvd<T>>
where
    T: faer::traits::ComplexField + Copy + nalgebra::Scalar,
{
    let dec = to_faer(a).svd().ok()?;
    let s = dec.S().column_vector().iter().map(|&x| real(x)).collect();
    Some((from_faer(dec.U()), s, from_faer(dec.V())))
}

pub(crate) fn eigenvalues(a: &DMatrix<C64>) -> Option<Vec<C64>> {
    to_faer(a).eigenvalues().ok()
}
