//! One checkable operation per operator-theoretic claim, each returning a
//! structured [`VerificationReport`] with named hypotheses, residual norms
//! and an explicit conclusion, absent (vacuous) whenever a hypothesis
//! fails, never silently true.

pub mod aluthge_thm;
pub mod chains;
pub mod equalities;
pub mod lemmas;
pub mod report;

/// Derived conclusion tolerances are uniformly this multiple of `eq_tol`;
/// one documented amplification factor instead of per-claim tuning.
pub const AMPLIFICATION: f64 = 10.0;

pub use aluthge_thm::{beck_putnam_check, verify_thm25};
pub use chains::{verify_chain2, verify_chain3, verify_thm21, verify_thm22, HyponormalityMode};
pub use equalities::{verify_eq_h1, verify_eq_h2};
pub use lemmas::{fuglede_putnam_check, verify_intertwining_reduction, verify_lemma23};
pub use report::{Hypothesis, VerificationReport};
