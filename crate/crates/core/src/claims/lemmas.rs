use num_complex::Complex64;

use crate::claims::report::VerificationReport;
use crate::claims::AMPLIFICATION;
use crate::error::{OpError, Result};
use crate::numerics::calculus::{loewner_compare, pd_log};
use crate::numerics::eig::operator_norm;
use crate::numerics::matrix::{commutator, Matrix};
use crate::numerics::tolerances::Tolerances;
use crate::operators::classes::is_normal;
use crate::operators::subspaces::{compress, kernel_orth_projection, range_projection, reduces};

fn try_pd_log(m: &Matrix, tol: &Tolerances) -> Result<Option<Matrix>> {
    match pd_log(m, tol) {
        Ok(l) => Ok(Some(l)),
        Err(OpError::LogUndefined) | Err(OpError::NotPsd { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Scaling preserves log order: for invertible positive `T ⪰_log S` and
/// `c > 0`, `log(cT) ⪰ log(cS)`. The proof identity
/// `log(cT) = (log c)·I + log T` is measured for both operands.
pub fn verify_lemma23(
    t: &Matrix,
    s: &Matrix,
    c: f64,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    t.require_square()?;
    t.same_shape(s)?;
    if c.is_nan() || c <= 0.0 {
        return Err(OpError::BadParameter(format!(
            "scaling constant must be positive, got {c}"
        )));
    }
    let mut report = VerificationReport::new("Lemma2.3");

    let log_t = try_pd_log(t, tol)?;
    let log_s = try_pd_log(s, tol)?;
    report.hypothesis("t_positive_definite", log_t.is_some());
    report.hypothesis("s_positive_definite", log_s.is_some());
    let (log_t, log_s) = match (log_t, log_s) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            report.hypothesis_with_detail("log_order", false, "not evaluated");
            return Ok(report);
        }
    };

    let order = loewner_compare(&log_t, &log_s, tol)?;
    report.defect("hypothesis_loewner", order.defect);
    report.hypothesis_with_detail(
        "log_order",
        order.holds,
        format!("λ_min(log T − log S) = {:.3e}", order.min_eigenvalue),
    );

    let ct = t.scale_re(c);
    let cs = s.scale_re(c);
    let log_ct = pd_log(&ct, tol)?;
    let log_cs = pd_log(&cs, tol)?;

    let shift = Matrix::identity(t.rows()).scale(Complex64::new(c.ln(), 0.0));
    report.defect(
        "scaling_identity_t",
        log_ct.frob_distance(&(&shift + &log_t)),
    );
    report.defect(
        "scaling_identity_s",
        log_cs.frob_distance(&(&shift + &log_s)),
    );

    let conclusion = loewner_compare(&log_ct, &log_cs, tol)?;
    report.defect("conclusion_loewner", conclusion.defect);
    report.conclude(conclusion.holds);
    Ok(report)
}

/// Fuglede–Putnam at one instance: for normal `N` commuting with `X`, the
/// adjoint commutes too, within `10·eq_tol·‖N‖‖X‖`.
pub fn fuglede_putnam_check(n: &Matrix, x: &Matrix, tol: &Tolerances) -> Result<VerificationReport> {
    n.require_square()?;
    n.same_shape(x)?;
    let mut report = VerificationReport::new("FugledePutnam");

    let scale = operator_norm(n) * operator_norm(x);
    let comm = commutator(n, x).frob_norm();
    let adjoint_comm = commutator(&n.adjoint(), x).frob_norm();
    report.defect("commutator", comm);
    report.defect("adjoint_commutator", adjoint_comm);

    report.hypothesis("normal", is_normal(n, tol)?);
    report.hypothesis_with_detail(
        "commutes",
        comm <= tol.eq_tol * scale,
        format!("‖NX − XN‖ = {comm:.3e}"),
    );

    report.conclude(adjoint_comm <= AMPLIFICATION * tol.eq_tol * scale);
    Ok(report)
}

/// Structure transferred along an intertwining `TX = XS`: the closure of
/// `ran(X)` reduces `T`, `(ker X)^⊥` reduces `S`, and both compressions are
/// normal. Whether the transfer is *expected* (e.g. `T`, `S` normal) is the
/// caller's responsibility; this only measures it.
pub fn verify_intertwining_reduction(
    t: &Matrix,
    s: &Matrix,
    x: &Matrix,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    t.require_square()?;
    t.same_shape(s)?;
    t.same_shape(x)?;
    let mut report = VerificationReport::new("Lemma2.4");

    let scale = operator_norm(t).max(operator_norm(s)) * operator_norm(x);
    let inter = (&(t * x) - &(x * s)).frob_norm();
    report.defect("intertwining", inter);
    report.hypothesis_with_detail(
        "intertwines",
        inter <= tol.eq_tol * scale.max(1.0),
        format!("‖TX − XS‖ = {inter:.3e}"),
    );
    if !report.hypotheses_met {
        return Ok(report);
    }

    let range_proj = range_projection(x, tol)?;
    let kernel_proj = kernel_orth_projection(x, tol)?;
    let range_reduces = reduces(t, &range_proj, tol)?;
    let kernel_reduces = reduces(s, &kernel_proj, tol)?;
    report.defect("range_commutator", commutator(&range_proj, t).frob_norm());
    report.defect("kernel_commutator", commutator(&kernel_proj, s).frob_norm());

    let t_compressed = compress(t, &range_proj, tol)?;
    let s_compressed = compress(s, &kernel_proj, tol)?;
    let t_normal = is_normal(&t_compressed, tol)?;
    let s_normal = is_normal(&s_compressed, tol)?;
    report.defect("compression_t_normality", t_compressed.normality_defect());
    report.defect("compression_s_normality", s_compressed.normality_defect());

    report.conclude(range_reduces && kernel_reduces && t_normal && s_normal);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::generators::{log_ordered_pair, nilpotent_jordan, random_normal};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn lemma23_diagonal_example() {
        let e = std::f64::consts::E;
        let t = Matrix::real_diag(&[e * e, e]);
        let s = Matrix::real_diag(&[e, 1.0]);
        let report = verify_lemma23(&t, &s, 5.0, &tol()).unwrap();
        assert!(report.hypotheses_met);
        assert_eq!(report.conclusion_holds, Some(true));
        assert!(report.defects["scaling_identity_t"] < 1e-10);
        assert!(report.defects["scaling_identity_s"] < 1e-10);
    }

    #[test]
    fn lemma23_scaling_by_one_mirrors_the_hypothesis() {
        let (t, s) = log_ordered_pair(3, 42, &tol()).unwrap();
        let report = verify_lemma23(&t, &s, 1.0, &tol()).unwrap();
        assert_eq!(report.conclusion_holds, Some(true));
        assert!(report.defects["scaling_identity_t"] < 1e-9);
    }

    #[test]
    fn lemma23_sampled_pairs_scale_both_ways() {
        for seed in 0..5u64 {
            let (t, s) = log_ordered_pair(4, seed, &tol()).unwrap();
            for c in [0.1, 10.0] {
                let report = verify_lemma23(&t, &s, c, &tol()).unwrap();
                assert_eq!(report.conclusion_holds, Some(true), "seed {seed}, c {c}");
            }
        }
    }

    #[test]
    fn lemma23_rejects_nonpositive_scale_and_singular_operand() {
        let t = Matrix::identity(2);
        assert!(verify_lemma23(&t, &t, 0.0, &tol()).is_err());
        let singular = Matrix::real_diag(&[1.0, 0.0]);
        let report = verify_lemma23(&t, &singular, 2.0, &tol()).unwrap();
        assert!(report.vacuous());
    }

    #[test]
    fn fuglede_putnam_identity_commutes() {
        let n = Matrix::real_diag(&[1.0, 2.0]);
        let report = fuglede_putnam_check(&n, &Matrix::identity(2), &tol()).unwrap();
        assert_eq!(report.conclusion_holds, Some(true));
    }

    #[test]
    fn fuglede_putnam_rotation_with_itself() {
        let n = Matrix::from_real_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]);
        let report = fuglede_putnam_check(&n, &n, &tol()).unwrap();
        assert!(report.hypotheses_met);
        assert_eq!(report.conclusion_holds, Some(true));
        assert!(report.defects["adjoint_commutator"] < 1e-12);
    }

    #[test]
    fn fuglede_putnam_records_raw_defect_for_nilpotent_input() {
        // N*X − XN* = diag(−1, 1) for N = X = the Jordan block.
        let j = nilpotent_jordan(2);
        let report = fuglede_putnam_check(&j, &j, &tol()).unwrap();
        assert!(report.vacuous(), "nilpotent input fails normality");
        assert!((report.defects["adjoint_commutator"] - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn intertwining_identity_case() {
        let t = Matrix::real_diag(&[1.0, 2.0]);
        let report =
            verify_intertwining_reduction(&t, &t, &Matrix::identity(2), &tol()).unwrap();
        assert_eq!(report.conclusion_holds, Some(true));
    }

    #[test]
    fn intertwining_zero_is_vacuously_fine() {
        let t = Matrix::real_diag(&[1.0, 2.0]);
        let s = Matrix::real_diag(&[3.0, 4.0]);
        let report = verify_intertwining_reduction(&t, &s, &Matrix::zeros(2, 2), &tol()).unwrap();
        assert!(report.hypotheses_met, "X = 0 intertwines everything");
        assert_eq!(report.conclusion_holds, Some(true));
    }

    #[test]
    fn intertwining_polynomial_in_a_normal_operator() {
        let n = random_normal(4, 9);
        // X = 2I + N + N² commutes with N
        let x = &(&Matrix::identity(4).scale_re(2.0) + &n) + &(&n * &n);
        let report = verify_intertwining_reduction(&n, &n, &x, &tol()).unwrap();
        assert!(report.hypotheses_met);
        assert_eq!(report.conclusion_holds, Some(true));
    }
}
