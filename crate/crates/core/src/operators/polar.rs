use crate::error::Result;
use crate::numerics::eig::{herm_eig, operator_norm};
use crate::numerics::matrix::Matrix;
use crate::numerics::psd_power;
use crate::numerics::tolerances::Tolerances;

/// Polar factors `T = U·P`.
///
/// `P = (T*T)^{1/2}` is PSD and `U` is the partial isometry `T·P⁺`, so that
/// `ker(U) = ker(P)` and `U*U` is the orthogonal projection onto `ran(P)`.
/// On `ker(P)` the isometry part is zero rather than completed to a unitary;
/// for invertible `T` it is unitary.
#[derive(Debug, Clone)]
pub struct PolarParts {
    pub isometry: Matrix,
    pub modulus: Matrix,
}

/// Residual norms of the four defining properties of [`PolarParts`].
#[derive(Debug, Clone, Copy)]
pub struct PolarDefects {
    /// `‖T − U·P‖`
    pub factorization: f64,
    /// `‖U·U*·U − U‖`
    pub partial_isometry: f64,
    /// distance between the kernel projections of `U` and `P`
    pub kernel_match: f64,
    /// `‖U*U − (projection onto ran P)‖`
    pub range_projection: f64,
}

impl PolarDefects {
    pub fn max(&self) -> f64 {
        self.factorization
            .max(self.partial_isometry)
            .max(self.kernel_match)
            .max(self.range_projection)
    }
}

/// Polar decomposition via one eigendecomposition of `T*T`.
///
/// Eigenvalues of `P` at or below `rank_tol·‖P‖` are treated as zero when
/// forming `P⁺`, which is what pins `U` to zero on `ker(P)`.
pub fn polar(t: &Matrix, tol: &Tolerances) -> Result<PolarParts> {
    let n = t.require_square()?;
    tol.validate()?;
    let gram = &t.adjoint() * t;
    let sd = herm_eig(&gram, tol)?;

    let sigma_max = sd
        .eigenvalues()
        .iter()
        .fold(0.0f64, |acc, z| acc.max(z.re.max(0.0)))
        .sqrt();
    let cutoff = tol.rank_tol * sigma_max;

    let mut modulus = Matrix::zeros(n, n);
    let mut pinv = Matrix::zeros(n, n);
    for (lambda, q) in sd.eigenvalues().iter().zip(sd.projections()) {
        let sigma = lambda.re.max(0.0).sqrt();
        if sigma > cutoff && sigma > 0.0 {
            modulus = &modulus + &q.scale_re(sigma);
            pinv = &pinv + &q.scale_re(1.0 / sigma);
        }
    }
    let isometry = t * &pinv;
    Ok(PolarParts { isometry, modulus })
}

impl PolarParts {
    pub fn defects(&self, t: &Matrix, tol: &Tolerances) -> Result<PolarDefects> {
        let u = &self.isometry;
        let p = &self.modulus;
        let factorization = (u * p).frob_distance(t);
        let uu = &u.adjoint() * u;
        let partial_isometry = (&(u * &uu) - u).frob_norm();
        let ran_p = psd_power(p, 0.0, tol)?;
        let range_projection = uu.frob_distance(&ran_p);
        // ker(X) projection = I − projection onto ran(X*)
        let ker_u = psd_power(&uu, 0.0, tol)?;
        let kernel_match = ker_u.frob_distance(&ran_p);
        Ok(PolarDefects {
            factorization,
            partial_isometry,
            kernel_match,
            range_projection,
        })
    }
}

/// The Aluthge transform `|T|^{1/2} U |T|^{1/2}`.
pub fn aluthge(t: &Matrix, tol: &Tolerances) -> Result<Matrix> {
    let parts = polar(t, tol)?;
    let sqrt_p = psd_power(&parts.modulus, 0.5, tol)?;
    Ok(&(&sqrt_p * &parts.isometry) * &sqrt_p)
}

/// k-fold Aluthge transform; `k = 0` returns the input unchanged.
pub fn aluthge_iterate(t: &Matrix, k: usize, tol: &Tolerances) -> Result<Matrix> {
    let mut acc = t.clone();
    for _ in 0..k {
        acc = aluthge(&acc, tol)?;
    }
    Ok(acc)
}

/// `‖U^{n0} − U*‖_F`.
pub fn power_adjoint_defect(u: &Matrix, n0: usize) -> Result<f64> {
    u.require_square()?;
    Ok(u.pow(n0).frob_distance(&u.adjoint()))
}

/// Does `U^{n0} = U*` hold within `eq_tol·max(‖U‖^{n0}, 1)`?
pub fn power_equals_adjoint(u: &Matrix, n0: usize, tol: &Tolerances) -> Result<bool> {
    let defect = power_adjoint_defect(u, n0)?;
    let scale = operator_norm(u).powi(n0 as i32).max(1.0);
    Ok(defect <= tol.eq_tol * scale)
}
