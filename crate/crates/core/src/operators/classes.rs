use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{OpError, Result};
use crate::numerics::calculus::{loewner_compare, pd_log, psd_power};
use crate::numerics::eig::{operator_norm, smallest_singular_value};
use crate::numerics::matrix::Matrix;
use crate::numerics::tolerances::Tolerances;

/// p exponents the classifier reports on when the caller does not choose.
pub const DEFAULT_P_VALUES: [f64; 3] = [0.25, 0.5, 1.0];

/// `‖T*T − TT*‖_F ≤ psd_tol·‖T‖²`?
pub fn is_normal(t: &Matrix, tol: &Tolerances) -> Result<bool> {
    t.require_square()?;
    let norm = operator_norm(t);
    Ok(t.normality_defect() <= tol.psd_tol * norm * norm)
}

/// `(T*T)^p ⪰ (TT*)^p` in the Loewner order, for a fixed `p > 0`.
pub fn is_p_hyponormal(t: &Matrix, p: f64, tol: &Tolerances) -> Result<bool> {
    if p.is_nan() || p <= 0.0 {
        return Err(OpError::BadParameter(format!(
            "hyponormality exponent must be positive, got {p}"
        )));
    }
    t.require_square()?;
    let left = psd_power(&(&t.adjoint() * t), p, tol)?;
    let right = psd_power(&(t * &t.adjoint()), p, tol)?;
    Ok(loewner_compare(&left, &right, tol)?.holds)
}

pub fn is_hyponormal(t: &Matrix, tol: &Tolerances) -> Result<bool> {
    is_p_hyponormal(t, 1.0, tol)
}

/// `log(T*T) ⪰ log(TT*)` for invertible `T`.
///
/// `None` means "undefined": `T` is singular (smallest singular value at or
/// below `rank_tol·‖T‖`) or the logarithms do not exist numerically. This
/// is deliberately distinct from `Some(false)`.
pub fn is_log_hyponormal(t: &Matrix, tol: &Tolerances) -> Result<Option<bool>> {
    t.require_square()?;
    let sigma_max = operator_norm(t);
    let sigma_min = smallest_singular_value(t);
    if sigma_min <= tol.rank_tol * sigma_max || sigma_max == 0.0 {
        return Ok(None);
    }
    let left = match pd_log(&(&t.adjoint() * t), tol) {
        Ok(m) => m,
        Err(OpError::LogUndefined) => return Ok(None),
        Err(e) => return Err(e),
    };
    let right = match pd_log(&(t * &t.adjoint()), tol) {
        Ok(m) => m,
        Err(OpError::LogUndefined) => return Ok(None),
        Err(e) => return Err(e),
    };
    Ok(Some(loewner_compare(&left, &right, tol)?.holds))
}

/// Membership summary across the operator classes the crate cares about.
#[derive(Debug, Clone, Serialize)]
pub struct ClassReport {
    pub normal: bool,
    pub hyponormal: bool,
    /// (p, verdict) per requested exponent, in the order requested.
    pub p_hyponormal: Vec<(f64, bool)>,
    /// Absent when `T` is singular (log-hyponormality undefined).
    pub log_hyponormal: Option<bool>,
    pub defects: BTreeMap<String, f64>,
    /// Internal-consistency violations; empty when the class hierarchy
    /// (normal ⇒ hyponormal ⇒ p-hyponormal for p ≤ 1) is respected.
    pub notes: Vec<String>,
}

/// Classify `T` against the requested p exponents.
pub fn classify(t: &Matrix, ps: &[f64], tol: &Tolerances) -> Result<ClassReport> {
    t.require_square()?;
    let normal = is_normal(t, tol)?;
    let hyponormal = is_hyponormal(t, tol)?;
    let mut p_hyponormal = Vec::with_capacity(ps.len());
    for &p in ps {
        p_hyponormal.push((p, is_p_hyponormal(t, p, tol)?));
    }
    let log_hyponormal = is_log_hyponormal(t, tol)?;

    let mut defects = BTreeMap::new();
    defects.insert("self_commutator".to_string(), t.normality_defect());
    let left = psd_power(&(&t.adjoint() * t), 1.0, tol)?;
    let right = psd_power(&(t * &t.adjoint()), 1.0, tol)?;
    defects.insert(
        "hyponormal_loewner".to_string(),
        loewner_compare(&left, &right, tol)?.defect,
    );

    let mut notes = Vec::new();
    if normal && !hyponormal {
        notes.push("internal inconsistency: normal but not hyponormal".to_string());
    }
    for &(p, holds) in &p_hyponormal {
        if hyponormal && p <= 1.0 && !holds {
            notes.push(format!(
                "internal inconsistency: hyponormal but not {p}-hyponormal"
            ));
        }
    }

    Ok(ClassReport {
        normal,
        hyponormal,
        p_hyponormal,
        log_hyponormal,
        defects,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn unitary_is_normal_and_p_hyponormal() {
        let u = Matrix::diag(&[
            Complex64::from_polar(1.0, 0.3),
            Complex64::from_polar(1.0, -1.2),
        ]);
        let report = classify(&u, &DEFAULT_P_VALUES, &tol()).unwrap();
        assert!(report.normal);
        assert!(report.hyponormal);
        assert!(report.p_hyponormal.iter().all(|&(_, b)| b));
        assert_eq!(report.log_hyponormal, Some(true));
        assert!(report.notes.is_empty());
    }

    #[test]
    fn weighted_swap_is_not_hyponormal() {
        // T*T − TT* = diag(5, −5)
        let t = Matrix::from_real_rows(&[vec![0.0, 2.0], vec![3.0, 0.0]]);
        assert!(!is_p_hyponormal(&t, 1.0, &tol()).unwrap());
        let report = classify(&t, &[1.0], &tol()).unwrap();
        assert!(!report.normal);
        assert!(!report.hyponormal);
        assert!((report.defects["self_commutator"] - 50f64.sqrt()).abs() < 1e-10);
        assert!((report.defects["hyponormal_loewner"] - 5.0).abs() < 1e-9);
    }

    #[test]
    fn nilpotent_jordan_is_not_normal_and_log_undefined() {
        let j = Matrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]);
        assert!(!is_normal(&j, &tol()).unwrap());
        assert_eq!(is_log_hyponormal(&j, &tol()).unwrap(), None);
        let report = classify(&j, &DEFAULT_P_VALUES, &tol()).unwrap();
        assert!(report.log_hyponormal.is_none());
    }

    #[test]
    fn rejects_nonpositive_exponent() {
        let t = Matrix::identity(2);
        assert!(is_p_hyponormal(&t, 0.0, &tol()).is_err());
        assert!(is_p_hyponormal(&t, -1.0, &tol()).is_err());
    }
}
