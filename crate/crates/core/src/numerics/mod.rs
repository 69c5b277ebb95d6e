//! Dense complex matrix arithmetic, Hermitian/normal eigendecomposition,
//! Loewner-order comparison and matrix functional calculus.

pub mod calculus;
pub mod eig;
pub mod matrix;
pub mod tolerances;

pub use calculus::{
    function_of_normal, herm_map, loewner_compare, loewner_geq, pd_log, psd_pinv_power, psd_power,
    LoewnerReport,
};
pub use eig::{
    herm_eig, normal_eig, norms_and_distance, operator_norm, smallest_singular_value, NormReport,
    ProjectionDefects, SpectralDecomposition,
};
pub use matrix::{commutator, Matrix, Vector};
pub use tolerances::Tolerances;
