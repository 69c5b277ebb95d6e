use num_complex::Complex64;

use crate::error::{OpError, Result};
use crate::numerics::eig::{herm_eig, jacobi_hermitian, normal_eig, operator_norm};
use crate::numerics::matrix::Matrix;
use crate::numerics::tolerances::Tolerances;

/// Eigenvalue map on a Hermitian matrix: `A = Σ λ Q ↦ Σ f(λ) Q`.
///
/// No PSD or invertibility gating; the callers below layer their own
/// domain checks on top of this.
pub fn herm_map(a: &Matrix, tol: &Tolerances, mut f: impl FnMut(f64) -> f64) -> Result<Matrix> {
    let sd = herm_eig(a, tol)?;
    Ok(sd.apply(|z| Complex64::new(f(z.re), 0.0)))
}

fn psd_eigenvalues(p: &Matrix, tol: &Tolerances) -> Result<(Vec<f64>, Vec<Matrix>, f64)> {
    let sd = herm_eig(p, tol)?;
    let lambdas: Vec<f64> = sd.eigenvalues().iter().map(|z| z.re).collect();
    let scale = lambdas.iter().fold(0.0f64, |acc, &l| acc.max(l.abs()));
    if let Some(&min) = lambdas
        .iter()
        .filter(|&&l| l < -tol.psd_tol * scale)
        .min_by(|a, b| a.partial_cmp(b).unwrap())
    {
        return Err(OpError::NotPsd {
            min_eigenvalue: min,
        });
    }
    Ok((lambdas, sd.projections().to_vec(), scale))
}

/// Fractional power `P^s` of a PSD matrix, `s ≥ 0`.
///
/// Eigenvalues below `-psd_tol·‖P‖` are an error; small negatives are
/// clamped to zero. The convention `0^0 := 0` makes `P^0` the orthogonal
/// projection onto `ran(P)`, with "zero" meaning below `rank_tol·‖P‖`.
pub fn psd_power(p: &Matrix, s: f64, tol: &Tolerances) -> Result<Matrix> {
    if s.is_nan() || s < 0.0 {
        return Err(OpError::BadParameter(format!(
            "power exponent must be nonnegative, got {s}"
        )));
    }
    let (lambdas, projections, scale) = psd_eigenvalues(p, tol)?;
    let cutoff = tol.rank_tol * scale;
    let mut out = Matrix::zeros(p.rows(), p.cols());
    for (lambda, q) in lambdas.iter().zip(&projections) {
        let l = lambda.max(0.0);
        let mapped = if s == 0.0 {
            if l > cutoff {
                1.0
            } else {
                0.0
            }
        } else {
            l.powf(s)
        };
        if mapped != 0.0 {
            out = &out + &q.scale_re(mapped);
        }
    }
    Ok(out)
}

/// Moore–Penrose style inverse power `(P⁺)^s`: eigenvalues above
/// `rank_tol·‖P‖` map to `λ^{-s}`, the rest to zero.
pub fn psd_pinv_power(p: &Matrix, s: f64, tol: &Tolerances) -> Result<Matrix> {
    if s.is_nan() || s < 0.0 {
        return Err(OpError::BadParameter(format!(
            "power exponent must be nonnegative, got {s}"
        )));
    }
    let (lambdas, projections, scale) = psd_eigenvalues(p, tol)?;
    let cutoff = tol.rank_tol * scale;
    let mut out = Matrix::zeros(p.rows(), p.cols());
    for (lambda, q) in lambdas.iter().zip(&projections) {
        if *lambda > cutoff {
            out = &out + &q.scale_re(lambda.powf(-s));
        }
    }
    Ok(out)
}

/// Logarithm of a positive-definite matrix.
///
/// Requires `λ_min > rank_tol·‖P‖`; singular or indefinite input signals
/// that the logarithm (and with it log-hyponormality) is undefined.
pub fn pd_log(p: &Matrix, tol: &Tolerances) -> Result<Matrix> {
    let (lambdas, projections, scale) = psd_eigenvalues(p, tol)?;
    let cutoff = tol.rank_tol * scale;
    if scale == 0.0 || lambdas.iter().any(|&l| l <= cutoff) {
        return Err(OpError::LogUndefined);
    }
    let mut out = Matrix::zeros(p.rows(), p.cols());
    for (lambda, q) in lambdas.iter().zip(&projections) {
        out = &out + &q.scale_re(lambda.ln());
    }
    Ok(out)
}

/// Functional calculus on a normal matrix: `Σ f(λ_k) Q_k`.
pub fn function_of_normal(
    n: &Matrix,
    tol: &Tolerances,
    f: impl FnMut(Complex64) -> Complex64,
) -> Result<Matrix> {
    Ok(normal_eig(n, tol)?.apply(f))
}

/// Outcome of a Loewner-order comparison `A ⪰ B`.
#[derive(Debug, Clone, Copy)]
pub struct LoewnerReport {
    /// Smallest eigenvalue of `A − B`.
    pub min_eigenvalue: f64,
    /// `max(‖A‖, ‖B‖, 1)`, the scale the threshold is relative to.
    pub scale: f64,
    /// Positive part of `−λ_min`, i.e. how far the comparison fails.
    pub defect: f64,
    pub holds: bool,
}

fn require_hermitian(m: &Matrix, tol: &Tolerances) -> Result<()> {
    let defect = m.hermitian_defect();
    let allowed = tol.eq_tol * m.frob_norm();
    if defect > allowed {
        return Err(OpError::NotHermitian { defect, allowed });
    }
    Ok(())
}

/// `A ⪰ B` in the Loewner order, with the usual PSD slack:
/// `λ_min(A − B) ≥ −psd_tol·max(‖A‖, ‖B‖, 1)`.
pub fn loewner_compare(a: &Matrix, b: &Matrix, tol: &Tolerances) -> Result<LoewnerReport> {
    a.same_shape(b)?;
    a.require_square()?;
    tol.validate()?;
    require_hermitian(a, tol)?;
    require_hermitian(b, tol)?;

    let diff = (a - b).hermitian_part();
    let threshold = tol.rank_tol * diff.frob_norm();
    let (values, _) = jacobi_hermitian(&diff, threshold)?;
    let min_eigenvalue = values.into_iter().fold(f64::INFINITY, f64::min);
    let min_eigenvalue = if min_eigenvalue.is_finite() {
        min_eigenvalue
    } else {
        0.0 // 0x0 comparison
    };
    let scale = operator_norm(a).max(operator_norm(b)).max(1.0);
    Ok(LoewnerReport {
        min_eigenvalue,
        scale,
        defect: (-min_eigenvalue).max(0.0),
        holds: min_eigenvalue >= -tol.psd_tol * scale,
    })
}

pub fn loewner_geq(a: &Matrix, b: &Matrix, tol: &Tolerances) -> Result<bool> {
    Ok(loewner_compare(a, b, tol)?.holds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_square_root() {
        let p = Matrix::real_diag(&[4.0, 9.0]);
        let r = psd_power(&p, 0.5, &tol()).unwrap();
        assert!(r.frob_distance(&Matrix::real_diag(&[2.0, 3.0])) < 1e-12);
    }

    #[test]
    fn unit_power_is_identity_map() {
        let p = Matrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        let r = psd_power(&p, 1.0, &tol()).unwrap();
        assert!(r.frob_distance(&p) < 1e-12);
    }

    #[test]
    fn square_root_squares_back() {
        let p = Matrix::from_real_rows(&[vec![5.0, 2.0], vec![2.0, 3.0]]);
        let r = psd_power(&p, 0.5, &tol()).unwrap();
        assert!((&r * &r).frob_distance(&p) < 1e-10);
    }

    #[test]
    fn zeroth_power_is_range_projection() {
        let p = Matrix::real_diag(&[0.0, 1.0]);
        let r = psd_power(&p, 0.0, &tol()).unwrap();
        assert!(r.frob_distance(&p) < 1e-12);
        // strictly positive diagonal: P^0 = I
        let q = Matrix::real_diag(&[0.5, 3.0]);
        let r = psd_power(&q, 0.0, &tol()).unwrap();
        assert!(r.frob_distance(&Matrix::identity(2)) < 1e-12);
    }

    #[test]
    fn rejects_negative_exponent_and_indefinite_input() {
        let p = Matrix::identity(2);
        assert!(matches!(
            psd_power(&p, -0.5, &tol()),
            Err(OpError::BadParameter(_))
        ));
        let ind = Matrix::real_diag(&[1.0, -1.0]);
        assert!(matches!(
            psd_power(&ind, 0.5, &tol()),
            Err(OpError::NotPsd { .. })
        ));
    }

    #[test]
    fn pinv_power_inverts_above_cutoff() {
        let p = Matrix::real_diag(&[4.0, 0.0]);
        let r = psd_pinv_power(&p, 1.0, &tol()).unwrap();
        assert!(r.frob_distance(&Matrix::real_diag(&[0.25, 0.0])) < 1e-12);
    }

    #[test]
    fn log_of_diagonal_exponentials() {
        let p = Matrix::real_diag(&[std::f64::consts::E, std::f64::consts::E.powi(2)]);
        let l = pd_log(&p, &tol()).unwrap();
        assert!(l.frob_distance(&Matrix::real_diag(&[1.0, 2.0])) < 1e-12);
        let l = pd_log(&Matrix::identity(3), &tol()).unwrap();
        assert!(l.frob_norm() < 1e-12);
    }

    #[test]
    fn log_round_trips_through_exp() {
        let p = Matrix::from_real_rows(&[vec![3.0, 1.0], vec![1.0, 2.0]]);
        let l = pd_log(&p, &tol()).unwrap();
        let back = herm_map(&l, &tol(), f64::exp).unwrap();
        assert!(back.frob_distance(&p) < 1e-10);
    }

    #[test]
    fn log_rejects_singular_input() {
        let p = Matrix::real_diag(&[0.0, 1.0]);
        assert!(matches!(pd_log(&p, &tol()), Err(OpError::LogUndefined)));
        assert!(matches!(
            pd_log(&Matrix::zeros(2, 2), &tol()),
            Err(OpError::LogUndefined)
        ));
    }

    #[test]
    fn function_of_normal_identity_and_constant() {
        let n = Matrix::diag(&[c(0.0, 1.0), c(-1.0, 0.0)]);
        let same = function_of_normal(&n, &tol(), |z| z).unwrap();
        assert!(same.frob_distance(&n) < 1e-12);
        let one = function_of_normal(&n, &tol(), |_| Complex64::ONE).unwrap();
        assert!(one.frob_distance(&Matrix::identity(2)) < 1e-12);
    }

    #[test]
    fn angle_halving_on_diagonal_unitary() {
        // angles π/2 and π halve to π/4 and π/2
        let n = Matrix::diag(&[c(0.0, 1.0), c(-1.0, 0.0)]);
        let halved = function_of_normal(&n, &tol(), |z| {
            Complex64::from_polar(1.0, z.arg().rem_euclid(2.0 * std::f64::consts::PI) / 2.0)
        })
        .unwrap();
        let expected = Matrix::diag(&[
            Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
            Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_2),
        ]);
        assert!(halved.frob_distance(&expected) < 1e-12);
    }

    #[test]
    fn loewner_examples() {
        let t = tol();
        assert!(loewner_geq(&Matrix::real_diag(&[2.0, 2.0]), &Matrix::identity(2), &t).unwrap());
        let a = Matrix::from_real_rows(&[vec![1.0, 0.5], vec![0.5, 2.0]]);
        assert!(loewner_geq(&a, &a, &t).unwrap());
        // difference diag(-1, 1) has a negative eigenvalue
        assert!(!loewner_geq(&Matrix::real_diag(&[1.0, 3.0]), &Matrix::real_diag(&[2.0, 2.0]), &t).unwrap());
    }

    #[test]
    fn loewner_rejects_shape_and_symmetry_violations() {
        let t = tol();
        assert!(loewner_compare(&Matrix::identity(2), &Matrix::identity(3), &t).is_err());
        let j = Matrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]);
        assert!(matches!(
            loewner_compare(&j, &Matrix::identity(2), &t),
            Err(OpError::NotHermitian { .. })
        ));
    }
}
