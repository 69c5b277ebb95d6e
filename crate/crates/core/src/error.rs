use thiserror::Error;

/// Errors shared by every numerical operation in the crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum OpError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: String, right: String },

    #[error("matrix is not Hermitian within tolerance (defect {defect:.3e}, allowed {allowed:.3e})")]
    NotHermitian { defect: f64, allowed: f64 },

    #[error("matrix is not normal within tolerance (defect {defect:.3e}, allowed {allowed:.3e})")]
    NotNormal { defect: f64, allowed: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("matrix is singular or indefinite; logarithm undefined")]
    LogUndefined,

    #[error("matrix is not unitary within tolerance (defect {defect:.3e})")]
    NotUnitary { defect: f64 },

    #[error("matrix is not an orthogonal projection within tolerance (defect {defect:.3e})")]
    NotProjection { defect: f64 },

    #[error("entry ({row},{col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("entries length {got} does not match {rows}x{cols}")]
    BadLength { rows: usize, cols: usize, got: usize },

    #[error("eigensolver failed to converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("invalid parameter: {0}")]
    BadParameter(String),
}

pub type Result<T> = std::result::Result<T, OpError>;
