//! Pooled (group) testing with unreliable measurements.
//!
//! A small number of positives among n individuals is to be recovered from m
//! pooled boolean tests, where a pooled contact does not register reliably:
//! each one of the designed contact matrix survives into the realized
//! sampling matrix only with probability p (or, adversarially, up to e
//! entries per column are erased). The decoder sees the design, the outcome
//! vector, and p — never the realized matrix.
//!
//! The crate provides:
//! - the measurement model and both corruption channels ([`model`]),
//! - Bernoulli and Reed-Solomon-based contact matrix designs ([`design`]),
//! - the distance decoder and a brute-force consistency oracle ([`decode`]),
//! - exhaustive (k, e)-disjunctness certification and the analytic failure
//!   bounds ([`analysis`]),
//! - the finite-field and encoding machinery behind the explicit design
//!   ([`gf`]).
//!
//! Everything randomized is a pure function of a `u64` seed ([`seed`]); all
//! values are immutable after construction and safe to share across threads.

pub mod analysis;
pub mod bits;
mod comb;
pub mod decode;
pub mod design;
pub mod error;
pub mod gf;
pub mod model;
pub mod seed;

pub use analysis::{
    bernoulli_failure_bound, bernoulli_failure_bound_gamma, column_weight_stats,
    dilution_overflow_bound, ks_guarantee_margin, verify_disjunct, witness_confusion_pair,
    witness_leftover, BoundReport, DisjunctReport, DisjunctWitness, WeightStats,
};
pub use bits::BitMatrix;
pub use decode::{
    distance_decode, evaluate_decode, inclusion_minimal, oracle_consistent_supports,
    DecodeEval, DecodeResult,
};
pub use design::{
    build_kautz_singleton, build_probabilistic, derive_ks_params, derive_prob_params,
    gamma_constant, prob_m_bound, KSDesignParams, ProbDesignParams,
};
pub use error::{Error, Result};
pub use gf::{FieldSpec, RSCode};
pub use model::{
    adversarial_corrupt, dilute, dilute_columns, end_to_end_sample, measure, sample_outcome,
    AdversaryStrategy, ChannelSpec, ContactMatrix, DesignMeta, Outcome, SamplingMatrix,
    SparseSignal,
};
pub use seed::mix64;
