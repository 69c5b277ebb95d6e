//! Polar decomposition, Aluthge transform, operator-class predicates and
//! subspace machinery.

pub mod arcs;
pub mod classes;
pub mod polar;
pub mod subspaces;

pub use arcs::{semicircle_spectrum, Arc, Semicircle};
pub use classes::{
    classify, is_hyponormal, is_log_hyponormal, is_normal, is_p_hyponormal, ClassReport,
    DEFAULT_P_VALUES,
};
pub use polar::{
    aluthge, aluthge_iterate, polar, power_adjoint_defect, power_equals_adjoint, PolarDefects,
    PolarParts,
};
pub use subspaces::{compress, kernel_orth_projection, range_projection, reduces};
