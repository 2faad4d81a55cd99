use super::{apply_scaling, GeneralScaling};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Scalar, ToleranceConfig};

/// Composable size measure over the nonzero support of a vector.
///
/// Each variant is homogeneous, permutation invariant, equals 1 on every
/// nonzero binary vector, and is unchanged by padding with zeros or
/// repeating entries (tensor expansion by a binary vector).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SizeFunction {
    /// Geometric mean of the nonzero magnitudes.
    GeometricMean,
    /// `‖u‖_p / |S|^(1/p)` where `S` is the nonzero support.
    PNorm(f64),
    /// `(Σ|u|^(a+b) / Σ|u|^a)^(1/b)`.
    RatioAB(f64, f64),
}

impl SizeFunction {
    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x > 0.0 && x.is_finite();
        match *self {
            SizeFunction::GeometricMean => Ok(()),
            SizeFunction::PNorm(p) if ok(p) => Ok(()),
            SizeFunction::PNorm(p) => Err(Error::InvalidSizeFunction(format!(
                "p must be positive, got {p}"
            ))),
            SizeFunction::RatioAB(a, b) if ok(a) && ok(b) => Ok(()),
            SizeFunction::RatioAB(a, b) => Err(Error::InvalidSizeFunction(format!(
                "a and b must be positive, got a = {a}, b = {b}"
            ))),
        }
    }

    /// Size of a vector of nonnegative magnitudes.
    pub(crate) fn of_magnitudes(&self, mags: &[f64]) -> f64 {
        let max = mags.iter().copied().fold(0.0, f64::max);
        if max == 0.0 {
            return 0.0;
        }
        match *self {
            SizeFunction::GeometricMean => {
                let (sum, count) = mags
                    .iter()
                    .filter(|&&x| x > 0.0)
                    .fold((0.0, 0usize), |(s, c), &x| (s + x.ln(), c + 1));
                (sum / count as f64).exp()
            }
            // Both power forms are evaluated on u / max(|u|) to keep the
            // powers in range, then rescaled by homogeneity.
            SizeFunction::PNorm(p) => {
                let (sum, count) = mags
                    .iter()
                    .filter(|&&x| x > 0.0)
                    .fold((0.0, 0usize), |(s, c), &x| (s + (x / max).powf(p), c + 1));
                max * (sum / count as f64).powf(p.recip())
            }
            SizeFunction::RatioAB(a, b) => {
                let (num, den) =
                    mags.iter()
                        .filter(|&&x| x > 0.0)
                        .fold((0.0, 0.0), |(n, d), &x| {
                            let r = x / max;
                            (n + r.powf(a + b), d + r.powf(a))
                        });
                max * (num / den).powf(b.recip())
            }
        }
    }
}

/// Size of `u` under `f`; the zero vector has size 0.
pub fn size_of<T: Scalar>(u: &[T], f: SizeFunction) -> f64 {
    let mags: Vec<f64> = u.iter().map(|x| x.modulus()).collect();
    f.of_magnitudes(&mags)
}

/// Sinkhorn-type balancing: alternately divides every nonzero row, then
/// every nonzero column, of `|A|` by its size under `f`.
///
/// Converges when the mean absolute log-adjustment over rows plus that over
/// columns drops below `balance_tol`. Under `PNorm` and `RatioAB` some
/// supports never converge to a finite scaling; those surface as
/// [`Error::NonConvergence`].
pub fn sinkhorn_scale<T: Scalar>(
    a: &Matrix<T>,
    f: SizeFunction,
    cfg: &ToleranceConfig,
) -> Result<GeneralScaling<T>> {
    cfg.validate()?;
    f.validate()?;
    let (m, n) = a.shape();
    let mut mags: Vec<f64> = a.to_row_major().iter().map(|x| x.modulus()).collect();
    let nonzero_rows: Vec<usize> = (0..m)
        .filter(|&i| mags[i * n..(i + 1) * n].iter().any(|&x| x > 0.0))
        .collect();
    let nonzero_cols: Vec<usize> = (0..n)
        .filter(|&j| (0..m).any(|i| mags[i * n + j] > 0.0))
        .collect();

    let mut dl = vec![1.0; m];
    let mut dr = vec![1.0; n];
    let mut iterations = 0;
    let mut column = vec![0.0; m];
    if !nonzero_rows.is_empty() {
        loop {
            iterations += 1;

            let mut row_adj = 0.0;
            for &i in &nonzero_rows {
                let row = &mut mags[i * n..(i + 1) * n];
                let s = f.of_magnitudes(row);
                row.iter_mut().for_each(|x| *x /= s);
                dl[i] /= s;
                row_adj += s.ln().abs();
            }

            let mut col_adj = 0.0;
            for &j in &nonzero_cols {
                for i in 0..m {
                    column[i] = mags[i * n + j];
                }
                let s = f.of_magnitudes(&column);
                for i in 0..m {
                    mags[i * n + j] /= s;
                }
                dr[j] /= s;
                col_adj += s.ln().abs();
            }

            let dx = row_adj / nonzero_rows.len() as f64 + col_adj / nonzero_cols.len() as f64;
            if !dx.is_finite() {
                return Err(Error::NonConvergence { iterations, dx });
            }
            if dx < cfg.balance_tol {
                break;
            }
            if iterations >= cfg.max_iter {
                return Err(Error::NonConvergence { iterations, dx });
            }
        }
    }

    let scaled = apply_scaling(a, &dl, &dr);
    Ok(GeneralScaling {
        dl,
        dr,
        scaled,
        iterations,
    })
}
