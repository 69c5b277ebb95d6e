use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::claims::report::VerificationReport;
use crate::claims::AMPLIFICATION;
use crate::error::Result;
use crate::numerics::calculus::{function_of_normal, psd_pinv_power, psd_power};
use crate::numerics::eig::{operator_norm, smallest_singular_value};
use crate::numerics::matrix::{commutator, Matrix};
use crate::numerics::tolerances::Tolerances;
use crate::operators::arcs::{semicircle_spectrum, Arc};
use crate::operators::classes::is_normal;
use crate::operators::polar::{aluthge, polar};

/// The square-root branch determined by a semicircle: eigenvalue angles of
/// `U²` are unwound relative to the doubled arc start and halved back into
/// the arc.
fn halve_into_arc(arc: &Arc) -> impl Fn(Complex64) -> Complex64 {
    let doubled_start = 2.0 * arc.start;
    move |mu: Complex64| {
        let phi = doubled_start + (mu.arg() - doubled_start).rem_euclid(TAU);
        Complex64::from_polar(1.0, phi / 2.0)
    }
}

/// Commutation transfer from `U²` to `U` for a unitary whose spectrum sits
/// in an open semicircle.
///
/// Conclusion checked two ways: `‖UX − XU‖` directly, and by reconstructing
/// `U` as the arc square root of `U²` through the spectral calculus, the
/// finite-dimensional stand-in for completeness of the exponential family.
pub fn beck_putnam_check(u: &Matrix, x: &Matrix, tol: &Tolerances) -> Result<VerificationReport> {
    u.require_square()?;
    u.same_shape(x)?;
    let mut report = VerificationReport::new("BeckPutnam");

    // Errors (rather than vacuity) for non-unitary input.
    let semicircle = semicircle_spectrum(u, tol)?;
    match &semicircle {
        Some(s) => report.hypothesis_with_detail(
            "semicircle",
            true,
            format!("margin = {:.4}", s.margin),
        ),
        None => report.hypothesis_with_detail("semicircle", false, "spectrum spans ≥ π"),
    };

    let u2 = u * u;
    let scale_x = operator_norm(x);
    let u2_comm = commutator(&u2, x).frob_norm();
    report.defect("u2_commutator", u2_comm);
    report.hypothesis_with_detail(
        "u2_commutes",
        u2_comm <= tol.eq_tol * scale_x,
        format!("‖U²X − XU²‖ = {u2_comm:.3e}"),
    );

    let u_comm = commutator(u, x).frob_norm();
    report.defect("u_commutator", u_comm);

    if let Some(semi) = semicircle {
        if report.hypotheses_met {
            let reconstructed = function_of_normal(&u2, tol, halve_into_arc(&semi.arc))?;
            let rec_defect = reconstructed.frob_distance(u);
            report.defect("reconstruction", rec_defect);
            let direct_ok = u_comm <= AMPLIFICATION * tol.eq_tol * scale_x;
            let rec_ok = rec_defect <= AMPLIFICATION * tol.eq_tol;
            report.conclude(direct_ok && rec_ok);
        }
    }
    Ok(report)
}

/// For invertible `T` whose polar isometry has spectrum in an open
/// semicircle, `T` is normal iff its Aluthge transform is.
///
/// On instances where the hypotheses hold and the Aluthge transform is
/// normal, the commutation pipeline behind the forward direction is
/// replayed with `X = I` and its step residuals recorded.
pub fn verify_thm25(t: &Matrix, tol: &Tolerances) -> Result<VerificationReport> {
    let n = t.require_square()?;
    let mut report = VerificationReport::new("Thm2.5");
    let parts = polar(t, tol)?;
    let u = &parts.isometry;

    let sigma_max = operator_norm(t);
    let sigma_min = smallest_singular_value(t);
    let invertible = sigma_min > tol.rank_tol * sigma_max && sigma_max > 0.0;
    report.hypothesis_with_detail(
        "invertible",
        invertible,
        format!("sigma_min = {sigma_min:.3e}"),
    );

    // A nearly singular T can leave U non-unitary at working precision;
    // the semicircle hypothesis is then unestablished, not an error.
    let (satisfied, detail) = if !invertible {
        (false, "not evaluated: polar isometry is not unitary".to_string())
    } else {
        match semicircle_spectrum(u, tol) {
            Ok(Some(s)) => (true, format!("margin = {:.4}", s.margin)),
            Ok(None) => (false, "spectrum spans ≥ π".to_string()),
            Err(crate::error::OpError::NotUnitary { defect }) => (
                false,
                format!("polar isometry not numerically unitary (defect {defect:.3e})"),
            ),
            Err(e) => return Err(e),
        }
    };
    report.hypothesis_with_detail("semicircle", satisfied, detail);

    let transformed = aluthge(t, tol)?;
    let t_normal = is_normal(t, tol)?;
    let a_normal = is_normal(&transformed, tol)?;
    report.defect("t_normality", t.normality_defect());
    report.defect("aluthge_normality", transformed.normality_defect());
    let biconditional = t_normal == a_normal;
    report.note(format!(
        "raw biconditional (aluthge normal ⇔ T normal): {biconditional} \
         (T normal: {t_normal}, aluthge normal: {a_normal})"
    ));
    if !biconditional {
        report.with_witness(t);
    }

    if report.hypotheses_met && a_normal {
        // Proof pipeline with X = I: the similarity through P^{1/2}·X·P^{-1/2}
        // and the three commutators it forces.
        let x = Matrix::identity(n);
        let p = &parts.modulus;
        let p_half = psd_power(p, 0.5, tol)?;
        let p_neg_half = psd_pinv_power(p, 0.5, tol)?;
        let m = &(&p_half * &x) * &p_neg_half;
        report.defect("similarity_eq6", commutator(&transformed, &m).frob_norm());
        let u_star_p = &u.adjoint() * p;
        report.defect(
            "eq8",
            (&(&u_star_p * &x) - &(&x * &u_star_p)).frob_norm(),
        );
        report.defect("eq13", commutator(&u.adjoint(), &x).frob_norm());
        report.defect("eq14", commutator(p, &x).frob_norm());
    }

    report.conclude(biconditional);
    Ok(report)
}
