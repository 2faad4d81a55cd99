//! Diagonal scale functions.
//!
//! Every general scaling returns positive diagonals `dl`, `dr` and the
//! balanced matrix `diag(dl)·A·diag(dr)`, in which the nonzero entries of
//! every nonzero row and column have unit magnitude product. The balanced
//! matrix is unique; the diagonals need not be when the support of `A`
//! splits into disconnected blocks.

mod size;

pub use size::{sinkhorn_scale, size_of, SizeFunction};

use crate::error::{Error, Result};
use crate::matrix::{DiagonalMatrix, Matrix, Scalar, ToleranceConfig};

/// Output of a general-diagonal scale function.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralScaling<T: Scalar> {
    /// Diagonal of the left scaling, length `m`, strictly positive.
    pub dl: Vec<f64>,
    /// Diagonal of the right scaling, length `n`, strictly positive.
    pub dr: Vec<f64>,
    /// `diag(dl) · A · diag(dr)`.
    pub scaled: Matrix<T>,
    /// Sweeps performed; zero for the closed-form path.
    pub iterations: usize,
}

impl<T: Scalar> GeneralScaling<T> {
    /// Builds a scaling from explicit diagonals, forming the scaled matrix
    /// directly. Both diagonals must be strictly positive and conformant.
    pub fn from_diagonals(a: &Matrix<T>, dl: Vec<f64>, dr: Vec<f64>) -> Result<Self> {
        if dl.len() != a.rows() || dr.len() != a.cols() {
            return Err(Error::DimensionMismatch {
                op: "GeneralScaling::from_diagonals",
                expected: format!("{} left and {} right entries", a.rows(), a.cols()),
                found: format!("{} and {}", dl.len(), dr.len()),
            });
        }
        if let Some(bad) = dl.iter().chain(&dr).find(|&&x| !(x > 0.0 && x.is_finite())) {
            return Err(Error::InvalidArgument(format!(
                "scaling entries must be positive and finite, got {bad}"
            )));
        }
        let scaled = apply_scaling(a, &dl, &dr);
        Ok(Self {
            dl,
            dr,
            scaled,
            iterations: 0,
        })
    }

    pub fn left(&self) -> DiagonalMatrix<f64> {
        DiagonalMatrix::wrap(self.dl.clone())
    }

    pub fn right(&self) -> DiagonalMatrix<f64> {
        DiagonalMatrix::wrap(self.dr.clone())
    }
}

/// `diag(dl) · a · diag(dr)` evaluated elementwise.
fn apply_scaling<T: Scalar>(a: &Matrix<T>, dl: &[f64], dr: &[f64]) -> Matrix<T> {
    let mut data = a.as_nalgebra().clone();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            data[(i, j)] = data[(i, j)].scale(dl[i] * dr[j]);
        }
    }
    Matrix::wrap(data)
}

/// Left diagonal scale function: `1 / ‖A(i,:)‖₂` for nonzero rows, `1` for
/// all-zero rows.
pub fn left_scale<T: Scalar>(a: &Matrix<T>) -> DiagonalMatrix<f64> {
    let entries = (0..a.rows())
        .map(|i| {
            let norm = a.as_nalgebra().row(i).norm();
            if norm > 0.0 {
                norm.recip()
            } else {
                1.0
            }
        })
        .collect();
    DiagonalMatrix::wrap(entries)
}

/// Closed-form general scaling of an elemental-nonzero matrix.
///
/// With `L = log|A|`, the left log-scale is `½·mean(L) − rowmean(L)` and the
/// right log-scale is `½·mean(L) − colmean(L)`, which zeroes every row and
/// column mean of the balanced log-magnitudes in one step.
pub fn closed_form_general_scale<T: Scalar>(a: &Matrix<T>) -> Result<GeneralScaling<T>> {
    let (m, n) = a.shape();
    let mut logs = vec![0.0; m * n];
    for i in 0..m {
        for j in 0..n {
            let r = a.get(i, j).modulus();
            if r == 0.0 {
                return Err(Error::ZeroEntry { row: i, col: j });
            }
            logs[i * n + j] = r.ln();
        }
    }
    let row_mean: Vec<f64> = (0..m)
        .map(|i| logs[i * n..(i + 1) * n].iter().sum::<f64>() / n as f64)
        .collect();
    let col_mean: Vec<f64> = (0..n)
        .map(|j| (0..m).map(|i| logs[i * n + j]).sum::<f64>() / m as f64)
        .collect();
    let grand = row_mean.iter().sum::<f64>() / m as f64;

    let dl: Vec<f64> = row_mean.iter().map(|r| (0.5 * grand - r).exp()).collect();
    let dr: Vec<f64> = col_mean.iter().map(|c| (0.5 * grand - c).exp()).collect();
    let scaled = apply_scaling(a, &dl, &dr);
    Ok(GeneralScaling {
        dl,
        dr,
        scaled,
        iterations: 0,
    })
}

/// Iterative general scaling for arbitrary supports.
///
/// Works on `L = log|A|` restricted to the support of `A`: each sweep
/// subtracts from every nonzero column the mean of its supported log
/// entries, then does the same for every nonzero row, accumulating the
/// subtracted amounts into the log-scales. The sweep adjustment `dx` is the
/// mean absolute column adjustment plus the mean absolute row adjustment.
/// All-zero rows and columns keep scale 1.
///
/// The balanced matrix equals `phase(A) ∘ exp(L)` but is evaluated as
/// `diag(dl) · A · diag(dr)`: rounding in the scales then only perturbs it
/// by a diagonal scaling, which cannot change its rank.
pub fn dscale<T: Scalar>(a: &Matrix<T>, cfg: &ToleranceConfig) -> Result<GeneralScaling<T>> {
    cfg.validate()?;
    let (m, n) = a.shape();
    let mut logs = vec![0.0; m * n];
    let mut mask = vec![false; m * n];
    let mut row_count = vec![0usize; m];
    let mut col_count = vec![0usize; n];
    for i in 0..m {
        for j in 0..n {
            let r = a.get(i, j).modulus();
            if r > 0.0 {
                logs[i * n + j] = r.ln();
                mask[i * n + j] = true;
                row_count[i] += 1;
                col_count[j] += 1;
            }
        }
    }
    let nonzero_rows = row_count.iter().filter(|&&c| c > 0).count();
    let nonzero_cols = col_count.iter().filter(|&&c| c > 0).count();

    let mut u = vec![0.0; m];
    let mut v = vec![0.0; n];
    let mut iterations = 0;
    if nonzero_rows > 0 {
        loop {
            iterations += 1;

            let mut col_adj = 0.0;
            for j in (0..n).filter(|&j| col_count[j] > 0) {
                let p = (0..m)
                    .filter(|&i| mask[i * n + j])
                    .map(|i| logs[i * n + j])
                    .sum::<f64>()
                    / col_count[j] as f64;
                for i in (0..m).filter(|&i| mask[i * n + j]) {
                    logs[i * n + j] -= p;
                }
                v[j] -= p;
                col_adj += p.abs();
            }

            let mut row_adj = 0.0;
            for i in (0..m).filter(|&i| row_count[i] > 0) {
                let row = &mut logs[i * n..(i + 1) * n];
                let row_mask = &mask[i * n..(i + 1) * n];
                let p = row
                    .iter()
                    .zip(row_mask)
                    .filter(|(_, &k)| k)
                    .map(|(x, _)| x)
                    .sum::<f64>()
                    / row_count[i] as f64;
                for (x, _) in row.iter_mut().zip(row_mask).filter(|(_, &k)| k) {
                    *x -= p;
                }
                u[i] -= p;
                row_adj += p.abs();
            }

            let dx = col_adj / nonzero_cols as f64 + row_adj / nonzero_rows as f64;
            if dx < cfg.balance_tol {
                break;
            }
            if iterations >= cfg.max_iter {
                return Err(Error::NonConvergence { iterations, dx });
            }
        }
    }

    let dl: Vec<f64> = u.into_iter().map(f64::exp).collect();
    let dr: Vec<f64> = v.into_iter().map(f64::exp).collect();
    let scaled = apply_scaling(a, &dl, &dr);
    Ok(GeneralScaling {
        dl,
        dr,
        scaled,
        iterations,
    })
}
