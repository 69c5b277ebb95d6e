use serde::Serialize;

use crate::error::Result;
use crate::families::generators::random_matrix;
use crate::families::rng::{trial_seed, SplitMix64};
use crate::numerics::eig::{operator_norm, smallest_singular_value};
use crate::numerics::matrix::Matrix;
use crate::numerics::tolerances::Tolerances;
use crate::operators::arcs::{semicircle_spectrum, Semicircle};
use crate::operators::classes::{classify, is_normal, ClassReport, DEFAULT_P_VALUES};
use crate::operators::polar::{aluthge, polar};

/// A non-normal operator whose Aluthge transform is normal, with the polar
/// isometry's spectrum violating the semicircle condition.
#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleWitness {
    pub matrix: Matrix,
    pub aluthge: Matrix,
    pub matrix_report: ClassReport,
    pub aluthge_report: ClassReport,
    /// Always `None` for a valid witness; kept for the serialized record.
    pub semicircle: Option<Semicircle>,
    /// Which search trial produced the witness.
    pub trial: u64,
}

fn qualify(t: &Matrix, trial: u64, tol: &Tolerances) -> Result<Option<CounterexampleWitness>> {
    // Invertibility keeps the polar isometry unitary, so a witness fails
    // exactly the semicircle hypothesis and nothing else.
    if smallest_singular_value(t) <= tol.rank_tol * operator_norm(t) {
        return Ok(None);
    }
    let a = aluthge(t, tol)?;
    if !is_normal(&a, tol)? || is_normal(t, tol)? {
        return Ok(None);
    }
    let u = polar(t, tol)?.isometry;
    let semicircle = match semicircle_spectrum(&u, tol) {
        Ok(found) => found,
        // borderline conditioning: not a clean witness, keep searching
        Err(crate::error::OpError::NotUnitary { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    if semicircle.is_some() {
        return Ok(None);
    }
    Ok(Some(CounterexampleWitness {
        matrix_report: classify(t, &DEFAULT_P_VALUES, tol)?,
        aluthge_report: classify(&a, &DEFAULT_P_VALUES, tol)?,
        matrix: t.clone(),
        aluthge: a,
        semicircle,
        trial,
    }))
}

/// The closed family that is a guaranteed hit for dim ≥ 2: `U = swap` on the
/// first two coordinates, `P = diag(a, b, c₃, …)` with `a ≠ b`, so
/// `T = U·P` is non-normal, its Aluthge transform is Hermitian, and
/// `sp(U) ⊇ {1, −1}` admits no semicircle.
fn seeded_swap_family(dim: usize, seed: u64) -> Matrix {
    let mut rng = SplitMix64::new(seed);
    let a = rng.uniform_in(1.0, 2.0);
    let b = rng.uniform_in(2.5, 4.0);
    let mut t = Matrix::zeros(dim, dim);
    t[(1, 0)] = (a).into();
    t[(0, 1)] = (b).into();
    for k in 2..dim {
        t[(k, k)] = rng.uniform_in(4.5 + k as f64, 5.0 + k as f64).into();
    }
    t
}

/// Budgeted search for an operator that is not normal although its Aluthge
/// transform is. Trial 0 draws from the guaranteed swap family; the
/// remaining budget samples unstructured seeded matrices. Returns `None`
/// when the budget is exhausted (and always for dim < 2, where every
/// operator is normal).
pub fn search_aluthge_counterexample(
    dim: usize,
    seed: u64,
    budget: u64,
    tol: &Tolerances,
) -> Result<Option<CounterexampleWitness>> {
    if dim < 2 || budget == 0 {
        return Ok(None);
    }
    for trial in 0..budget {
        let candidate = if trial == 0 {
            seeded_swap_family(dim, trial_seed(seed, trial))
        } else {
            random_matrix(dim, trial_seed(seed, trial))
        };
        if let Some(witness) = qualify(&candidate, trial, tol)? {
            return Ok(Some(witness));
        }
    }
    Ok(None)
}
