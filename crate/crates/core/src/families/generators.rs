use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{OpError, Result};
use crate::families::rng::SplitMix64;
use crate::numerics::calculus::{herm_map, pd_log};
use crate::numerics::matrix::Matrix;
use crate::numerics::normal_eig;
use crate::numerics::tolerances::Tolerances;
use crate::operators::arcs::Arc;

/// Weighted cyclic shift `T e_k = w_k e_{(k+1) mod n}`.
///
/// Its polar factors are the cyclic permutation (times the weight phases)
/// and `diag(|w_k|)`; with positive weights the permutation satisfies
/// `U^{n-1} = U*`. Zero weights are rejected since they would break the
/// invertibility the family is used for.
pub fn cyclic_weighted_shift(weights: &[Complex64]) -> Result<Matrix> {
    let n = weights.len();
    if n < 2 {
        return Err(OpError::BadParameter(format!(
            "cyclic shift needs at least 2 weights, got {n}"
        )));
    }
    if let Some(k) = weights.iter().position(|w| w.norm() == 0.0) {
        return Err(OpError::BadParameter(format!("weight {k} is zero")));
    }
    let mut t = Matrix::zeros(n, n);
    for (k, &w) in weights.iter().enumerate() {
        t[((k + 1) % n, k)] = w;
    }
    Ok(t)
}

/// Haar-like random unitary: a seeded complex Gaussian matrix orthonormalized
/// by modified Gram–Schmidt (column norms keep the triangular factor's
/// diagonal positive, so the output is a deterministic function of the seed).
pub fn random_unitary(dim: usize, rng: &mut SplitMix64) -> Matrix {
    if dim == 0 {
        return Matrix::zeros(0, 0);
    }
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<Complex64> = (0..dim).map(|_| rng.complex_gaussian()).collect();
        for prev in &cols {
            let inner: Complex64 = prev.iter().zip(&v).map(|(p, x)| p.conj() * x).sum();
            for (x, p) in v.iter_mut().zip(prev) {
                *x -= inner * p;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue; // essentially impossible; redraw
        }
        for x in &mut v {
            *x /= norm;
        }
        cols.push(v);
    }
    Matrix::from_fn(dim, dim, |r, c| cols[c][r])
}

fn conjugated_diagonal(dim: usize, rng: &mut SplitMix64, diag: &[Complex64]) -> Matrix {
    let v = random_unitary(dim, rng);
    let d = Matrix::diag(diag);
    &(&v * &d) * &v.adjoint()
}

/// Random normal matrix `V Λ V*` with complex Gaussian eigenvalues.
pub fn random_normal(dim: usize, seed: u64) -> Matrix {
    let mut rng = SplitMix64::new(seed);
    let diag: Vec<Complex64> = (0..dim).map(|_| rng.complex_gaussian()).collect();
    conjugated_diagonal(dim, &mut rng, &diag)
}

/// Random positive-definite matrix with condition number at most
/// `cond_bound`: eigenvalues are drawn log-uniformly from `[1, cond_bound]`.
pub fn random_psd(dim: usize, seed: u64, cond_bound: f64) -> Result<Matrix> {
    if cond_bound.is_nan() || cond_bound < 1.0 {
        return Err(OpError::BadParameter(format!(
            "condition bound must be ≥ 1, got {cond_bound}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let diag: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new((rng.uniform() * cond_bound.ln()).exp(), 0.0))
        .collect();
    Ok(conjugated_diagonal(dim, &mut rng, &diag))
}

/// Random invertible matrix `V₁ Σ V₂*` with singular values log-uniform in
/// `[1, cond_bound]`.
pub fn random_invertible(dim: usize, seed: u64, cond_bound: f64) -> Result<Matrix> {
    if cond_bound.is_nan() || cond_bound < 1.0 {
        return Err(OpError::BadParameter(format!(
            "condition bound must be ≥ 1, got {cond_bound}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let v1 = random_unitary(dim, &mut rng);
    let v2 = random_unitary(dim, &mut rng);
    let sigma: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new((rng.uniform() * cond_bound.ln()).exp(), 0.0))
        .collect();
    Ok(&(&v1 * &Matrix::diag(&sigma)) * &v2.adjoint())
}

/// Plain complex Gaussian matrix, no structure imposed.
pub fn random_matrix(dim: usize, seed: u64) -> Matrix {
    let mut rng = SplitMix64::new(seed);
    Matrix::from_fn(dim, dim, |_, _| rng.complex_gaussian())
}

/// The Jordan block with zero eigenvalue: ones on the superdiagonal.
/// Canonical non-normal, non-hyponormal test point.
pub fn nilpotent_jordan(dim: usize) -> Matrix {
    let mut j = Matrix::zeros(dim, dim);
    for k in 0..dim.saturating_sub(1) {
        j[(k, k + 1)] = Complex64::ONE;
    }
    j
}

/// Unitary with spectrum inside `arc`, every eigenvalue angle at least
/// `margin` away from both endpoints.
pub fn arc_unitary(arc: &Arc, margin: f64, dim: usize, seed: u64) -> Result<Matrix> {
    if margin.is_nan() || margin < 0.0 || 2.0 * margin >= arc.length {
        return Err(OpError::BadParameter(format!(
            "margin {margin} does not fit in an arc of length {}",
            arc.length
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let diag: Vec<Complex64> = (0..dim)
        .map(|_| {
            let theta = arc.start + rng.uniform_in(margin, arc.length - margin);
            Complex64::from_polar(1.0, theta)
        })
        .collect();
    Ok(conjugated_diagonal(dim, &mut rng, &diag))
}

/// `T = U·P` with `U` an arc unitary and `P` random positive definite with
/// condition number at most `cond_bound`; always invertible, and the polar
/// isometry of `T` is exactly `U`.
pub fn arc_unitary_times_pd(
    arc: &Arc,
    margin: f64,
    dim: usize,
    seed: u64,
    cond_bound: f64,
) -> Result<Matrix> {
    if arc.length > std::f64::consts::PI {
        return Err(OpError::BadParameter(format!(
            "arc length {} exceeds a semicircle",
            arc.length
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let u = arc_unitary(arc, margin, dim, rng.next_u64())?;
    let p = random_psd(dim, rng.next_u64(), cond_bound)?;
    Ok(&u * &p)
}

/// Pair of positive-definite matrices with `log T ⪰ log S` by construction:
/// `S = exp(log T − D)` for a random PSD defect `D` (in its own random
/// basis, so the pair does not commute).
pub fn log_ordered_pair(dim: usize, seed: u64, tol: &Tolerances) -> Result<(Matrix, Matrix)> {
    let mut rng = SplitMix64::new(seed);
    let t = random_psd(dim, rng.next_u64(), 50.0)?;
    let defect_scale = rng.uniform_in(0.0, 0.5);
    let d = random_psd(dim, rng.next_u64(), 10.0)?.scale_re(defect_scale);
    let log_t = pd_log(&t, tol)?;
    let s = herm_map(&(&log_t - &d), tol, f64::exp)?;
    Ok((t, s))
}

/// Projection of a seeded Gaussian matrix onto the commutant of a normal
/// matrix: `X = Σ_k Q_k X₀ Q_k` over the spectral projections of `N`.
/// Commutes with `N` (and with every function of `N`) by construction.
pub fn commutant_sample(n_mat: &Matrix, seed: u64, tol: &Tolerances) -> Result<Matrix> {
    let sd = normal_eig(n_mat, tol)?;
    let x0 = random_matrix(n_mat.rows(), seed);
    let mut x = Matrix::zeros(n_mat.rows(), n_mat.cols());
    for q in sd.projections() {
        x = &x + &(&(q * &x0) * q);
    }
    Ok(x)
}

/// Which structured family to draw from; the serialized form is part of the
/// CLI's JSON configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    CyclicWeightedShift,
    ArcUnitaryTimesPd,
    RandomNormal,
    RandomInvertible,
    RandomPsd,
    NilpotentJordan,
}

/// Kind-specific knobs; unused fields may stay `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct FamilyParams {
    /// Explicit weights (re, im) for cyclic shifts; seeded moduli in
    /// `[1/2, 2]` otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<(f64, f64)>>,
    /// Arc start angle for arc unitaries (default 0).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arc_start: Option<f64>,
    /// Arc length (default π).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arc_length: Option<f64>,
    /// Eigenvalue-angle margin from the arc endpoints (default 0.1).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
    /// Condition-number bound for positive factors (default 100).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cond_bound: Option<f64>,
}

pub const DEFAULT_COND_BOUND: f64 = 100.0;
pub const DEFAULT_ARC_MARGIN: f64 = 0.1;

/// Fully-specified family draw: `(kind, dim, seed, params)` determines the
/// generated matrix bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub dim: usize,
    pub seed: u64,
    #[serde(default)]
    pub params: FamilyParams,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, dim: usize, seed: u64) -> Self {
        FamilySpec {
            kind,
            dim,
            seed,
            params: FamilyParams::default(),
        }
    }

    pub fn generate(&self) -> Result<Matrix> {
        if self.dim == 0 {
            return Err(OpError::BadParameter("family dim must be ≥ 1".into()));
        }
        let cond = self.params.cond_bound.unwrap_or(DEFAULT_COND_BOUND);
        match self.kind {
            FamilyKind::CyclicWeightedShift => {
                let weights = match &self.params.weights {
                    Some(ws) => ws.iter().map(|&(re, im)| Complex64::new(re, im)).collect(),
                    None => seeded_cyclic_weights(self.dim, self.seed),
                };
                cyclic_weighted_shift(&weights)
            }
            FamilyKind::ArcUnitaryTimesPd => {
                let arc = Arc::new(
                    self.params.arc_start.unwrap_or(0.0),
                    self.params.arc_length.unwrap_or(std::f64::consts::PI),
                )?;
                let margin = self.params.margin.unwrap_or(DEFAULT_ARC_MARGIN);
                arc_unitary_times_pd(&arc, margin, self.dim, self.seed, cond)
            }
            FamilyKind::RandomNormal => Ok(random_normal(self.dim, self.seed)),
            FamilyKind::RandomInvertible => random_invertible(self.dim, self.seed, cond),
            FamilyKind::RandomPsd => random_psd(self.dim, self.seed, cond),
            FamilyKind::NilpotentJordan => Ok(nilpotent_jordan(self.dim)),
        }
    }
}

/// Seeded weights for cyclic shifts. Half the draws use a constant modulus
/// (making the shift normal and the hyponormality hypotheses satisfiable),
/// half use independent moduli in `[1/2, 2]`; a third of each get random
/// phases, which breaks `U^{n-1} = U*`.
pub fn seeded_cyclic_weights(dim: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = SplitMix64::new(seed);
    let constant_modulus = rng.uniform() < 0.5;
    let with_phases = rng.uniform() < 1.0 / 3.0;
    let base = rng.uniform_in(0.5, 2.0);
    (0..dim)
        .map(|_| {
            let modulus = if constant_modulus {
                base
            } else {
                rng.uniform_in(0.5, 2.0)
            };
            let phase = if with_phases {
                rng.uniform_in(0.0, std::f64::consts::TAU)
            } else {
                0.0
            };
            Complex64::from_polar(modulus, phase)
        })
        .collect()
}
