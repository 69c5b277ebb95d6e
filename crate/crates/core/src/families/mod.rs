//! Seeded, reproducible generators of structured operator families, plus a
//! budgeted counterexample search. Everything is a pure function of
//! `(kind, dim, seed, params)`.

pub mod generators;
pub mod rng;
pub mod search;

pub use generators::{
    arc_unitary, arc_unitary_times_pd, commutant_sample, cyclic_weighted_shift, log_ordered_pair,
    nilpotent_jordan, random_invertible, random_matrix, random_normal, random_psd, random_unitary,
    seeded_cyclic_weights, FamilyKind, FamilyParams, FamilySpec, DEFAULT_ARC_MARGIN,
    DEFAULT_COND_BOUND,
};
pub use rng::{trial_seed, SplitMix64};
pub use search::{search_aluthge_counterexample, CounterexampleWitness};
