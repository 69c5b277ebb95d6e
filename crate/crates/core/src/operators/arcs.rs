use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{OpError, Result};
use crate::numerics::eig::normal_eig;
use crate::numerics::matrix::Matrix;
use crate::numerics::tolerances::Tolerances;

/// Arc of the unit circle: angles `start + t` for `t ∈ [0, length]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    /// Normalized to `[0, 2π)`.
    pub start: f64,
    /// In `(0, 2π]`.
    pub length: f64,
}

impl Arc {
    pub fn new(start: f64, length: f64) -> Result<Self> {
        if !start.is_finite() || !length.is_finite() || length <= 0.0 || length > TAU {
            return Err(OpError::BadParameter(format!(
                "arc length must lie in (0, 2π], got start={start}, length={length}"
            )));
        }
        Ok(Arc {
            start: start.rem_euclid(TAU),
            length,
        })
    }

    pub fn semicircle(start: f64) -> Self {
        Arc {
            start: start.rem_euclid(TAU),
            length: PI,
        }
    }

    pub fn end(&self) -> f64 {
        (self.start + self.length).rem_euclid(TAU)
    }

    /// Angular offset of `theta` from the arc start, in `[0, 2π)`.
    pub fn offset(&self, theta: f64) -> f64 {
        (theta - self.start).rem_euclid(TAU)
    }

    /// Is `theta` inside the arc, at least `margin` away from both ends?
    pub fn contains_with_margin(&self, theta: f64, margin: f64) -> bool {
        let off = self.offset(theta);
        off > margin && off < self.length - margin
    }
}

/// A semicircle strictly containing a unitary's spectrum, together with the
/// smallest angular distance from an eigenvalue to either endpoint.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Semicircle {
    pub arc: Arc,
    pub margin: f64,
}

/// Locate an open semicircle containing sp(U), if one exists.
///
/// The eigenvalue angles are sorted and the maximal cyclic gap is found;
/// a semicircle exists iff that gap exceeds π, and the returned arc is the
/// length-π arc centered on the occupied span. `None` when the spectrum
/// cannot be covered (e.g. antipodal eigenvalues).
pub fn semicircle_spectrum(u: &Matrix, tol: &Tolerances) -> Result<Option<Semicircle>> {
    let n = u.require_square()?;
    tol.validate()?;
    let unitary_defect = (&u.adjoint() * u).frob_distance(&Matrix::identity(n));
    if unitary_defect > tol.eq_tol {
        return Err(OpError::NotUnitary {
            defect: unitary_defect,
        });
    }

    let sd = normal_eig(u, tol)?;
    let mut angles: Vec<f64> = sd
        .eigenvalues()
        .iter()
        .map(|z| z.arg().rem_euclid(TAU))
        .collect();
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());

    if angles.is_empty() {
        return Ok(Some(Semicircle {
            arc: Arc::semicircle(0.0),
            margin: PI / 2.0,
        }));
    }

    // Maximal cyclic gap between consecutive eigenvalue angles.
    let m = angles.len();
    let mut best_gap = f64::NEG_INFINITY;
    let mut best_idx = 0;
    for i in 0..m {
        let next = if i + 1 < m {
            angles[i + 1]
        } else {
            angles[0] + TAU
        };
        let gap = next - angles[i];
        if gap > best_gap {
            best_gap = gap;
            best_idx = i;
        }
    }
    if best_gap <= PI {
        return Ok(None);
    }

    // The occupied span starts just after the widest gap.
    let span_start = angles[(best_idx + 1) % m];
    let span = TAU - best_gap;
    let margin = (PI - span) / 2.0;
    let arc = Arc::semicircle(span_start - margin);
    Ok(Some(Semicircle { arc, margin }))
}
