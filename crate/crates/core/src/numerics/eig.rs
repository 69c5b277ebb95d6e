use num_complex::Complex64;

use crate::error::{OpError, Result};
use crate::numerics::matrix::Matrix;
use crate::numerics::tolerances::Tolerances;

const MAX_SWEEPS: usize = 64;

/// Eigenvalue/eigenprojection form of a Hermitian or normal matrix.
///
/// Projections are orthogonal, mutually annihilating and sum to the
/// identity; `Σ λ_k Q_k` reconstructs the input. Eigenvalues are sorted
/// descending by real part, then by imaginary part; eigenvalues closer than
/// `rank_tol · ‖A‖_F` are merged into a single projection.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<Complex64>,
    projections: Vec<Matrix>,
    dim: usize,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    pub fn projections(&self) -> &[Matrix] {
        &self.projections
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Functional calculus: `Σ f(λ_k) Q_k`.
    pub fn apply(&self, mut f: impl FnMut(Complex64) -> Complex64) -> Matrix {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (lambda, q) in self.eigenvalues.iter().zip(&self.projections) {
            out = &out + &q.scale(f(*lambda));
        }
        out
    }

    /// `Σ λ_k Q_k`.
    pub fn reconstruct(&self) -> Matrix {
        self.apply(|z| z)
    }

    pub fn reconstruction_defect(&self, a: &Matrix) -> f64 {
        self.reconstruct().frob_distance(a)
    }

    /// Worst-case defects of the projection family; all are zero for an
    /// exact spectral decomposition.
    pub fn projection_defects(&self) -> ProjectionDefects {
        let mut d = ProjectionDefects::default();
        let n = self.dim;
        let mut sum = Matrix::zeros(n, n);
        for (j, q) in self.projections.iter().enumerate() {
            d.hermitian = d.hermitian.max(q.hermitian_defect());
            d.idempotent = d.idempotent.max((&(q * q) - q).frob_norm());
            for (k, p) in self.projections.iter().enumerate() {
                if j != k {
                    d.orthogonal = d.orthogonal.max((q * p).frob_norm());
                }
            }
            sum = &sum + q;
        }
        d.complete = sum.frob_distance(&Matrix::identity(n));
        d
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ProjectionDefects {
    pub hermitian: f64,
    pub idempotent: f64,
    pub orthogonal: f64,
    pub complete: f64,
}

impl ProjectionDefects {
    pub fn max(&self) -> f64 {
        self.hermitian
            .max(self.idempotent)
            .max(self.orthogonal)
            .max(self.complete)
    }
}

/// Cyclic Jacobi for complex Hermitian matrices.
///
/// Each rotation zeroes one off-diagonal pair through a phase followed by a
/// real plane rotation; sweeps repeat until the off-diagonal Frobenius mass
/// drops below `threshold`. Returns the (unsorted) diagonal eigenvalues and
/// the accumulated unitary whose columns are the eigenvectors.
pub(crate) fn jacobi_hermitian(a: &Matrix, threshold: f64) -> Result<(Vec<f64>, Matrix)> {
    let n = a.require_square()?;
    let mut h = a.hermitian_part();
    let mut v = Matrix::identity(n);

    for _sweep in 0..MAX_SWEEPS {
        if off_diagonal_mass(&h) <= threshold {
            let values = (0..n).map(|k| h[(k, k)].re).collect();
            return Ok((values, v));
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                rotate(&mut h, &mut v, p, q);
            }
        }
    }
    if off_diagonal_mass(&h) <= threshold {
        let values = (0..n).map(|k| h[(k, k)].re).collect();
        return Ok((values, v));
    }
    Err(OpError::NoConvergence { sweeps: MAX_SWEEPS })
}

fn off_diagonal_mass(h: &Matrix) -> f64 {
    let n = h.rows();
    let mut sum = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                sum += h[(r, c)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One two-sided rotation G*HG annihilating the (p,q) pair, with V ← VG.
///
/// G restricted to the (p,q) plane is `[[c, s], [-s·ū, c·ū]]` where
/// `u = h_pq/|h_pq|` carries the phase and (c, s) is the classical real
/// Jacobi pair for the phase-flattened 2x2 block.
fn rotate(h: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let n = h.rows();
    let hpq = h[(p, q)];
    let m = hpq.norm();
    if m == 0.0 {
        return;
    }
    let u = hpq / m;
    let app = h[(p, p)].re;
    let aqq = h[(q, q)].re;

    let tau = (aqq - app) / (2.0 * m);
    let t = if tau.is_finite() {
        let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
        sign / (tau.abs() + (tau * tau + 1.0).sqrt())
    } else {
        0.0
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let gpp = Complex64::new(c, 0.0);
    let gpq = Complex64::new(s, 0.0);
    let gqp = -u.conj() * s;
    let gqq = u.conj() * c;

    // H ← H·G (columns p, q), then H ← G*·H (rows p, q).
    for r in 0..n {
        let hp = h[(r, p)];
        let hq = h[(r, q)];
        h[(r, p)] = hp * gpp + hq * gqp;
        h[(r, q)] = hp * gpq + hq * gqq;
    }
    for cidx in 0..n {
        let hp = h[(p, cidx)];
        let hq = h[(q, cidx)];
        h[(p, cidx)] = gpp.conj() * hp + gqp.conj() * hq;
        h[(q, cidx)] = gpq.conj() * hp + gqq.conj() * hq;
    }
    // The pivot pair is zero by construction; pin it and keep the diagonal real.
    h[(p, q)] = Complex64::ZERO;
    h[(q, p)] = Complex64::ZERO;
    h[(p, p)] = Complex64::new(h[(p, p)].re, 0.0);
    h[(q, q)] = Complex64::new(h[(q, q)].re, 0.0);

    for r in 0..n {
        let vp = v[(r, p)];
        let vq = v[(r, q)];
        v[(r, p)] = vp * gpp + vq * gqp;
        v[(r, q)] = vp * gpq + vq * gqq;
    }
}

/// Eigenvalue clusters of a Hermitian matrix: representative value plus the
/// columns of `vectors` spanning the merged eigenspace.
pub(crate) struct HermClusters {
    pub clusters: Vec<(f64, Vec<usize>)>,
    pub vectors: Matrix,
}

/// Cluster the Jacobi output: sort descending, merge gaps below
/// `merge_scale · rank_tol`, tie-break by original column index.
pub(crate) fn herm_clusters(a: &Matrix, tol: &Tolerances, merge_scale: f64) -> Result<HermClusters> {
    let threshold = tol.rank_tol * merge_scale;
    // Sweep well past the merge threshold: quadratic convergence makes the
    // extra sweep nearly free, and downstream unitarity checks need
    // eigenpairs accurate to ~1e-13 relative, not just to rank_tol.
    let sweep_threshold = tol.rank_tol.min(1e-13) * merge_scale;
    let (values, vectors) = jacobi_hermitian(a, sweep_threshold)?;
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| {
        values[j]
            .partial_cmp(&values[i])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(i.cmp(&j))
    });

    // Merge on consecutive gaps of the sorted eigenvalues; a cluster's
    // representative value is the mean of its members.
    let mut clusters: Vec<(f64, Vec<usize>)> = Vec::new();
    let mut last_value = f64::INFINITY;
    for &idx in &order {
        let v = values[idx];
        match clusters.last_mut() {
            Some((sum, members)) if (last_value - v).abs() <= threshold => {
                *sum += v;
                members.push(idx);
            }
            _ => clusters.push((v, vec![idx])),
        }
        last_value = v;
    }
    for (value, members) in &mut clusters {
        *value /= members.len() as f64;
    }
    Ok(HermClusters { clusters, vectors })
}

/// Extract columns `idxs` of `v` as an n×k matrix.
pub(crate) fn columns(v: &Matrix, idxs: &[usize]) -> Matrix {
    Matrix::from_fn(v.rows(), idxs.len(), |r, c| v[(r, idxs[c])])
}

/// `B·B*` for a (numerically) orthonormal basis `B`: the orthogonal
/// projection onto its span.
pub(crate) fn projection_from_basis(b: &Matrix) -> Matrix {
    b * &b.adjoint()
}

fn require_hermitian(a: &Matrix, tol: &Tolerances) -> Result<()> {
    let defect = a.hermitian_defect();
    let allowed = tol.eq_tol * a.frob_norm();
    if defect > allowed {
        return Err(OpError::NotHermitian { defect, allowed });
    }
    Ok(())
}

/// Spectral decomposition of a Hermitian matrix.
pub fn herm_eig(a: &Matrix, tol: &Tolerances) -> Result<SpectralDecomposition> {
    a.require_square()?;
    tol.validate()?;
    require_hermitian(a, tol)?;
    let scale = a.frob_norm();
    let hc = herm_clusters(a, tol, scale)?;
    let mut eigenvalues = Vec::with_capacity(hc.clusters.len());
    let mut projections = Vec::with_capacity(hc.clusters.len());
    for (value, members) in &hc.clusters {
        eigenvalues.push(Complex64::new(*value, 0.0));
        projections.push(projection_from_basis(&columns(&hc.vectors, members)));
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        projections,
        dim: a.rows(),
    })
}

/// Spectral decomposition of a normal matrix.
///
/// Simultaneously diagonalizes the commuting Hermitian parts
/// `(N+N*)/2` and `(N−N*)/(2i)`: the eigenspaces of the first are refined
/// against the second, which splits eigenvalues sharing a real part.
pub fn normal_eig(n_mat: &Matrix, tol: &Tolerances) -> Result<SpectralDecomposition> {
    let n = n_mat.require_square()?;
    tol.validate()?;
    let scale = n_mat.frob_norm();
    let defect = n_mat.normality_defect();
    let allowed = tol.eq_tol * scale * scale;
    if defect > allowed {
        return Err(OpError::NotNormal { defect, allowed });
    }

    let h = n_mat.hermitian_part();
    let k = n_mat.skew_part_over_i();

    let hc = herm_clusters(&h, tol, scale)?;
    let mut pairs: Vec<(Complex64, Matrix)> = Vec::new();
    for (re_value, members) in &hc.clusters {
        let basis = columns(&hc.vectors, members);
        if members.len() == 1 {
            let compressed = &(&basis.adjoint() * &k) * &basis;
            let im_value = compressed[(0, 0)].re;
            pairs.push((Complex64::new(*re_value, im_value), basis));
            continue;
        }
        let compressed = &(&basis.adjoint() * &k) * &basis;
        let sub = herm_clusters(&compressed, tol, scale)?;
        for (im_value, sub_members) in &sub.clusters {
            let w = columns(&sub.vectors, sub_members);
            pairs.push((Complex64::new(*re_value, *im_value), &basis * &w));
        }
    }

    // Descending by real part, then imaginary part; the pass above already
    // emits groups in that order, but make it explicit.
    pairs.sort_by(|a, b| {
        b.0.re
            .partial_cmp(&a.0.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(
                b.0.im
                    .partial_cmp(&a.0.im)
                    .unwrap_or(std::cmp::Ordering::Equal),
            )
    });

    let eigenvalues = pairs.iter().map(|(z, _)| *z).collect();
    let projections = pairs
        .iter()
        .map(|(_, b)| projection_from_basis(b))
        .collect();
    Ok(SpectralDecomposition {
        eigenvalues,
        projections,
        dim: n,
    })
}

/// Largest singular value, computed as `sqrt(λ_max(A*A))`.
pub fn operator_norm(a: &Matrix) -> f64 {
    if a.rows() == 0 || a.cols() == 0 {
        return 0.0;
    }
    let gram = &a.adjoint() * a;
    let threshold = 1e-14 * gram.frob_norm();
    let (values, _) = jacobi_hermitian(&gram, threshold)
        .expect("Jacobi on a Gram matrix converges");
    values.into_iter().fold(0.0f64, f64::max).max(0.0).sqrt()
}

/// Smallest singular value, from `λ_min(A*A)`.
pub fn smallest_singular_value(a: &Matrix) -> f64 {
    if a.rows() == 0 || a.cols() == 0 {
        return 0.0;
    }
    let gram = &a.adjoint() * a;
    let threshold = 1e-14 * gram.frob_norm();
    let (values, _) = jacobi_hermitian(&gram, threshold)
        .expect("Jacobi on a Gram matrix converges");
    values
        .into_iter()
        .fold(f64::INFINITY, f64::min)
        .max(0.0)
        .sqrt()
}

/// Frobenius norm, operator norm and relative Frobenius distance of a pair.
#[derive(Debug, Clone, Copy)]
pub struct NormReport {
    pub frobenius_left: f64,
    pub frobenius_right: f64,
    pub operator_left: f64,
    pub operator_right: f64,
    pub distance: f64,
    pub relative_distance: f64,
}

pub fn norms_and_distance(a: &Matrix, b: &Matrix) -> Result<NormReport> {
    a.same_shape(b)?;
    let distance = a.frob_distance(b);
    let fa = a.frob_norm();
    Ok(NormReport {
        frobenius_left: fa,
        frobenius_right: b.frob_norm(),
        operator_left: operator_norm(a),
        operator_right: operator_norm(b),
        distance,
        relative_distance: distance / fa.max(1.0),
    })
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
    fn diagonal_matrix_is_immediate() {
        let a = Matrix::real_diag(&[5.0, -2.0]);
        let sd = herm_eig(&a, &tol()).unwrap();
        assert_eq!(sd.eigenvalues(), &[c(5.0, 0.0), c(-2.0, 0.0)]);
        let e1 = Matrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, 0.0]]);
        let e2 = Matrix::from_real_rows(&[vec![0.0, 0.0], vec![0.0, 1.0]]);
        assert!(sd.projections()[0].frob_distance(&e1) < 1e-12);
        assert!(sd.projections()[1].frob_distance(&e2) < 1e-12);
    }

    #[test]
    fn identity_merges_into_one_projection() {
        let a = Matrix::identity(4);
        let sd = herm_eig(&a, &tol()).unwrap();
        assert_eq!(sd.eigenvalues().len(), 1);
        assert!((sd.eigenvalues()[0] - c(1.0, 0.0)).norm() < 1e-14);
        assert!(sd.projections()[0].frob_distance(&a) < 1e-12);
    }

    #[test]
    fn two_by_two_matches_characteristic_polynomial() {
        // [[2,1],[1,2]]: roots of λ² − 4λ + 3 are 3 and 1, eigenvectors
        // (1,1)/√2 and (1,−1)/√2.
        let a = Matrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        let sd = herm_eig(&a, &tol()).unwrap();
        assert!((sd.eigenvalues()[0].re - 3.0).abs() < 1e-12);
        assert!((sd.eigenvalues()[1].re - 1.0).abs() < 1e-12);
        let q_plus = Matrix::from_real_rows(&[vec![0.5, 0.5], vec![0.5, 0.5]]);
        let q_minus = Matrix::from_real_rows(&[vec![0.5, -0.5], vec![-0.5, 0.5]]);
        assert!(sd.projections()[0].frob_distance(&q_plus) < 1e-12);
        assert!(sd.projections()[1].frob_distance(&q_minus) < 1e-12);
        assert!(sd.reconstruction_defect(&a) < 1e-12);
    }

    #[test]
    fn complex_hermitian_reconstructs() {
        let a = Matrix::from_rows(&[
            vec![c(2.0, 0.0), c(1.0, 1.0), c(0.0, -2.0)],
            vec![c(1.0, -1.0), c(-1.0, 0.0), c(3.0, 0.5)],
            vec![c(0.0, 2.0), c(3.0, -0.5), c(0.5, 0.0)],
        ]);
        let sd = herm_eig(&a, &tol()).unwrap();
        assert!(sd.reconstruction_defect(&a) < 1e-10 * a.frob_norm().max(1.0));
        assert!(sd.projection_defects().max() < 1e-10);
        for lambda in sd.eigenvalues() {
            assert!(lambda.im.abs() < 1e-12);
        }
        // descending order
        for w in sd.eigenvalues().windows(2) {
            assert!(w[0].re >= w[1].re);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let j = Matrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]);
        assert!(matches!(
            herm_eig(&j, &tol()),
            Err(OpError::NotHermitian { .. })
        ));
    }

    #[test]
    fn normal_diagonal_imaginary() {
        let a = Matrix::diag(&[c(0.0, 1.0), c(0.0, -1.0)]);
        let sd = normal_eig(&a, &tol()).unwrap();
        assert!((sd.eigenvalues()[0] - c(0.0, 1.0)).norm() < 1e-12);
        assert!((sd.eigenvalues()[1] - c(0.0, -1.0)).norm() < 1e-12);
        assert!(sd.reconstruction_defect(&a) < 1e-12);
    }

    #[test]
    fn swap_matrix_spectrum() {
        let a = Matrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let sd = normal_eig(&a, &tol()).unwrap();
        assert!((sd.eigenvalues()[0] - c(1.0, 0.0)).norm() < 1e-12);
        assert!((sd.eigenvalues()[1] - c(-1.0, 0.0)).norm() < 1e-12);
        let q_plus = Matrix::from_real_rows(&[vec![0.5, 0.5], vec![0.5, 0.5]]);
        let q_minus = Matrix::from_real_rows(&[vec![0.5, -0.5], vec![-0.5, 0.5]]);
        assert!(sd.projections()[0].frob_distance(&q_plus) < 1e-12);
        assert!(sd.projections()[1].frob_distance(&q_minus) < 1e-12);
    }

    #[test]
    fn jordan_block_is_rejected_as_non_normal() {
        let j = Matrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]);
        assert!(matches!(
            normal_eig(&j, &tol()),
            Err(OpError::NotNormal { .. })
        ));
    }

    #[test]
    fn refinement_splits_conjugate_phases() {
        // diag(e^{iθ}, e^{−iθ}) conjugated by a fixed unitary: the Hermitian
        // part alone cannot separate the pair (same cosine), the skew part must.
        let theta = std::f64::consts::FRAC_PI_4;
        let d = Matrix::diag(&[
            Complex64::from_polar(1.0, theta),
            Complex64::from_polar(1.0, -theta),
        ]);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = Matrix::from_rows(&[vec![c(s, 0.0), c(0.0, s)], vec![c(0.0, s), c(s, 0.0)]]);
        let u = &(&v * &d) * &v.adjoint();
        let sd = normal_eig(&u, &tol()).unwrap();
        assert_eq!(sd.eigenvalues().len(), 2);
        assert!((sd.eigenvalues()[0] - Complex64::from_polar(1.0, theta)).norm() < 1e-12);
        assert!((sd.eigenvalues()[1] - Complex64::from_polar(1.0, -theta)).norm() < 1e-12);
        assert!(sd.reconstruction_defect(&u) < 1e-12);
        assert!(sd.projection_defects().max() < 1e-12);
    }

    #[test]
    fn operator_norm_examples() {
        assert!((operator_norm(&Matrix::real_diag(&[3.0, 4.0])) - 4.0).abs() < 1e-12);
        // T*T = diag(9, 4) for [[0,2],[3,0]], so the largest singular value is 3.
        let t = Matrix::from_real_rows(&[vec![0.0, 2.0], vec![3.0, 0.0]]);
        assert!((operator_norm(&t) - 3.0).abs() < 1e-12);
        assert!((smallest_singular_value(&t) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn norms_and_distance_report() {
        let r = norms_and_distance(&Matrix::identity(2), &Matrix::zeros(2, 2)).unwrap();
        assert!((r.frobenius_left - 2f64.sqrt()).abs() < 1e-15);
        assert!((r.operator_left - 1.0).abs() < 1e-12);
        assert!((r.relative_distance - 1.0).abs() < 1e-12);
        assert!(norms_and_distance(&Matrix::identity(2), &Matrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn zero_dimensional_matrices_are_tolerated() {
        let empty = Matrix::zeros(0, 0);
        assert_eq!(operator_norm(&empty), 0.0);
        let sd = herm_eig(&empty, &tol()).unwrap();
        assert!(sd.eigenvalues().is_empty());
    }
}
