use crate::claims::report::VerificationReport;
use crate::claims::AMPLIFICATION;
use crate::error::{OpError, Result};
use crate::numerics::calculus::{pd_log, psd_power};
use crate::numerics::eig::{operator_norm, smallest_singular_value};
use crate::numerics::matrix::Matrix;
use crate::numerics::tolerances::Tolerances;
use crate::operators::polar::polar;

/// `|T*|^s = U|T|^s U*` for each requested `s ≥ 0`.
///
/// Holds for every square `T` with the partial-isometry polar convention,
/// including `s = 0`, where both sides are the projection onto `ran(T)`.
pub fn verify_eq_h1(t: &Matrix, s_list: &[f64], tol: &Tolerances) -> Result<VerificationReport> {
    t.require_square()?;
    for &s in s_list {
        if s.is_nan() || s < 0.0 {
            return Err(OpError::BadParameter(format!(
                "exponent must be nonnegative, got {s}"
            )));
        }
    }
    let mut report = VerificationReport::new("Eq(H1)");
    let parts = polar(t, tol)?;
    let u = &parts.isometry;
    let u_adj = u.adjoint();
    let t_star_t = &t.adjoint() * t;
    let t_t_star = t * &t.adjoint();
    let op_t = operator_norm(t);

    let mut all_within = true;
    for &s in s_list {
        // |T*|^s = (TT*)^{s/2}, |T|^s = (T*T)^{s/2}
        let left = psd_power(&t_t_star, s / 2.0, tol)?;
        let right = &(u * &psd_power(&t_star_t, s / 2.0, tol)?) * &u_adj;
        let defect = left.frob_distance(&right);
        let threshold = AMPLIFICATION * tol.eq_tol * op_t.powf(2.0 * s).max(1.0);
        report.defect(&format!("defect_s={s}"), defect);
        all_within &= defect <= threshold;
    }
    report.conclude(all_within);
    Ok(report)
}

/// `log|T*| = U (log|T|) U*` for invertible `T`; vacuous otherwise.
pub fn verify_eq_h2(t: &Matrix, tol: &Tolerances) -> Result<VerificationReport> {
    t.require_square()?;
    let mut report = VerificationReport::new("Eq(H2)");
    let parts = polar(t, tol)?;
    let sigma_max = operator_norm(t);
    let sigma_min = smallest_singular_value(t);
    let invertible = sigma_min > tol.rank_tol * sigma_max && sigma_max > 0.0;
    report.hypothesis_with_detail(
        "invertible",
        invertible,
        format!("sigma_min = {sigma_min:.3e}, sigma_max = {sigma_max:.3e}"),
    );
    if !invertible {
        return Ok(report);
    }

    let modulus_star = psd_power(&(t * &t.adjoint()), 0.5, tol)?;
    // spectra sitting exactly at the rank cutoff can pass the invertibility
    // test yet defeat the logarithm; that is an unestablished hypothesis,
    // not an error
    let logs = match (pd_log(&modulus_star, tol), pd_log(&parts.modulus, tol)) {
        (Ok(a), Ok(b)) => Some((a, b)),
        (Err(OpError::LogUndefined), _) | (_, Err(OpError::LogUndefined)) => None,
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    let Some((log_left, log_right)) = logs else {
        report.hypothesis_with_detail(
            "logarithms_exist",
            false,
            "modulus spectrum at the rank cutoff",
        );
        return Ok(report);
    };
    let conjugated = &(&parts.isometry * &log_right) * &parts.isometry.adjoint();
    let defect = log_left.frob_distance(&conjugated);
    let threshold = AMPLIFICATION * tol.eq_tol * log_right.frob_norm().max(1.0);
    report.defect("log_conjugation", defect);
    report.conclude(defect <= threshold);
    Ok(report)
}
