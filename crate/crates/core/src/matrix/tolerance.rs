use crate::error::{Error, Result};

/// Numerical thresholds shared by every operation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ToleranceConfig {
    /// Relative singular-value cutoff: values `<= rank_tol * s_max` count as
    /// zero. `None` selects `max(m, n) * eps`.
    pub rank_tol: Option<f64>,
    /// Balancing stops once the mean absolute log-adjustment of a sweep drops
    /// below this value.
    pub balance_tol: f64,
    /// Upper bound on balancing sweeps.
    pub max_iter: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            rank_tol: None,
            balance_tol: 1e-12,
            max_iter: 1000,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(r) = self.rank_tol {
            if !(r >= 0.0 && r.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "rank tolerance must be a nonnegative real, got {r}"
                )));
            }
        }
        if !(self.balance_tol > 0.0 && self.balance_tol.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "balance tolerance must be a positive real, got {}",
                self.balance_tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidArgument("max_iter must be positive".into()));
        }
        Ok(())
    }

    /// Absolute singular-value threshold for an `m x n` operand whose largest
    /// singular value is `s_max`.
    pub fn rank_threshold(&self, m: usize, n: usize, s_max: f64) -> f64 {
        let rel = self
            .rank_tol
            .unwrap_or_else(|| m.max(n) as f64 * f64::EPSILON);
        rel * s_max
    }
}
