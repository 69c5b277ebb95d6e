//! Numerical operator-theory laboratory for finite-dimensional complex
//! matrices.
//!
//! The crate provides four layers:
//!
//! * [`numerics`]: dense complex matrices, a cyclic-Jacobi Hermitian
//!   eigensolver, spectral decompositions of normal matrices, Loewner-order
//!   comparison and matrix functional calculus (powers, logarithms,
//!   functions of normal operators);
//! * [`operators`]: polar decomposition with partial-isometry kernel
//!   conventions, the Aluthge transform, operator-class predicates
//!   (normal, p-hyponormal, log-hyponormal), spectral-arc location and
//!   reducing-subspace machinery;
//! * [`families`]: seeded, reproducible generators of structured operator
//!   families (weighted cyclic shifts, arc unitaries times positive
//!   factors, random normal/PSD/invertible matrices) and a counterexample
//!   search;
//! * [`claims`]: one checkable operation per operator-theoretic claim the
//!   crate exercises, each returning a structured [`claims::VerificationReport`]
//!   instead of a bare boolean.
//!
//! Everything is pure and deterministic: identical inputs (including seeds)
//! produce identical outputs, and values are safe to share across threads.

pub mod claims;
pub mod error;
pub mod families;
pub mod numerics;
pub mod operators;

pub use error::{OpError, Result};
pub use numerics::{Matrix, Tolerances, Vector};
