use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical tolerances shared by every routine in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Allowed deviation of a stored vector's norm from one.
    pub unit_tol: f64,
    /// Equality tolerance on inner products and objective values.
    pub eq_tol: f64,
    /// Relative singular-value threshold for rank decisions.
    pub rank_tol: f64,
    /// Slack granted to the strict inequality of the minimum cosine cone.
    pub cone_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            unit_tol: 1e-12,
            eq_tol: 1e-9,
            rank_tol: 1e-10,
            cone_tol: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn new(unit_tol: f64, eq_tol: f64, rank_tol: f64, cone_tol: f64) -> Result<Self> {
        let tol = Self {
            unit_tol,
            eq_tol,
            rank_tol,
            cone_tol,
        };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.unit_tol, self.eq_tol, self.rank_tol, self.cone_tol];
        if all.iter().all(|t| t.is_finite() && *t > 0.0) {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "tolerances must be strictly positive: {self:?}"
            )))
        }
    }
}
