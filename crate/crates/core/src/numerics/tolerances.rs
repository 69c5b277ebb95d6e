use serde::{Deserialize, Serialize};

use crate::error::{OpError, Result};

/// The three numerical thresholds every predicate in the crate shares.
///
/// * `eq_tol`: relative Frobenius threshold for matrix equality.
/// * `psd_tol`: minimum-eigenvalue threshold, relative to the operator
///   norm, below which a Hermitian matrix no longer counts as PSD.
/// * `rank_tol`: singular/eigenvalue cutoff relative to the largest one;
///   controls pseudo-inverses, invertibility tests and eigenvalue merging.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub eq_tol: f64,
    pub psd_tol: f64,
    pub rank_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eq_tol: 1e-9,
            psd_tol: 1e-9,
            rank_tol: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn new(eq_tol: f64, psd_tol: f64, rank_tol: f64) -> Result<Self> {
        let tol = Tolerances {
            eq_tol,
            psd_tol,
            rank_tol,
        };
        tol.validate()?;
        Ok(tol)
    }

    /// All thresholds must be strictly positive and below one.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eq_tol", self.eq_tol),
            ("psd_tol", self.psd_tol),
            ("rank_tol", self.rank_tol),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(OpError::BadParameter(format!(
                    "{name} must lie in (0, 1), got {v}"
                )));
            }
        }
        Ok(())
    }
}
