use crate::error::{OpError, Result};
use crate::numerics::eig::{columns, herm_clusters};
use crate::numerics::matrix::Matrix;
use crate::numerics::psd_power;
use crate::numerics::tolerances::Tolerances;

/// Orthogonal projection onto `ran(X)`, via the spectral decomposition of
/// `XX*`.
pub fn range_projection(x: &Matrix, tol: &Tolerances) -> Result<Matrix> {
    psd_power(&(x * &x.adjoint()), 0.0, tol)
}

/// Orthogonal projection onto `(ker X)^⊥ = ran(X*)`, via `X*X`.
pub fn kernel_orth_projection(x: &Matrix, tol: &Tolerances) -> Result<Matrix> {
    psd_power(&(&x.adjoint() * x), 0.0, tol)
}

fn require_projection(q: &Matrix, tol: &Tolerances) -> Result<()> {
    q.require_square()?;
    let scale = q.frob_norm().max(1.0);
    let hermitian = q.hermitian_defect();
    let idempotent = (&(q * q) - q).frob_norm();
    let defect = hermitian.max(idempotent);
    if defect > tol.eq_tol * scale {
        return Err(OpError::NotProjection { defect });
    }
    Ok(())
}

/// Does the range of the projection `Q` reduce `T`?
///
/// For an orthogonal projection this is equivalent to `QT = TQ`, which
/// captures invariance of both the subspace and its complement under `T`
/// and `T*`.
pub fn reduces(t: &Matrix, q: &Matrix, tol: &Tolerances) -> Result<bool> {
    t.require_square()?;
    t.same_shape(q)?;
    require_projection(q, tol)?;
    let defect = (&(q * t) - &(t * q)).frob_norm();
    Ok(defect <= tol.eq_tol * t.frob_norm().max(1.0))
}

/// Compression `Q T Q` expressed on an orthonormal basis of `ran(Q)`:
/// returns the k×k matrix `B* T B` where the columns of `B` span `ran(Q)`.
pub fn compress(t: &Matrix, q: &Matrix, tol: &Tolerances) -> Result<Matrix> {
    t.require_square()?;
    t.same_shape(q)?;
    require_projection(q, tol)?;
    let clusters = herm_clusters(q, tol, q.frob_norm().max(1.0))?;
    let mut range_cols = Vec::new();
    for (value, members) in &clusters.clusters {
        if *value > 0.5 {
            range_cols.extend_from_slice(members);
        }
    }
    let basis = columns(&clusters.vectors, &range_cols);
    Ok(&(&basis.adjoint() * t) * &basis)
}
