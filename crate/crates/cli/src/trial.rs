//! A single seeded recovery trial.

use pooltest::{
    distance_decode, evaluate_decode, mix64, sample_outcome, ChannelSpec, ContactMatrix,
    DesignMeta, Error, Result, SparseSignal,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::time::Instant;

/// Outcome of one trial. Everything except `decode_micros` is a pure
/// function of (matrix, k, e, channel, seed): the support is drawn from the
/// sub-seed `mix64(seed, 1)` and the channel runs on `mix64(seed, 2)`.
#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub seed: u64,
    pub design: String,
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub p: f64,
    pub e: usize,
    pub exact: bool,
    pub false_pos: usize,
    pub false_neg: usize,
    pub decode_micros: u64,
}

pub fn design_label(mc: &ContactMatrix) -> &'static str {
    match mc.design_meta() {
        Some(DesignMeta::Bernoulli { .. }) => "bernoulli",
        Some(DesignMeta::KautzSingleton { .. }) => "ks",
        None => "raw",
    }
}

/// Draws a uniformly random k-subset as the true support, samples the
/// channel, decodes with tolerance `e`, and scores the result.
pub fn run_trial(
    mc: &ContactMatrix,
    k: usize,
    e: usize,
    channel: &ChannelSpec,
    seed: u64,
) -> Result<TrialRecord> {
    if k > mc.n() {
        return Err(Error::Infeasible(format!(
            "trial sparsity k={k} exceeds n={}",
            mc.n()
        )));
    }
    let mut support_rng = ChaCha8Rng::seed_from_u64(mix64(seed, 1));
    let mut support = rand::seq::index::sample(&mut support_rng, mc.n(), k).into_vec();
    support.sort_unstable();
    let x = SparseSignal::new(mc.n(), support)?;

    let y = sample_outcome(mc, &x, channel, mix64(seed, 2))?;
    let started = Instant::now();
    let result = distance_decode(mc, &y, e, Some(k))?;
    let decode_micros = started.elapsed().as_micros() as u64;
    let eval = evaluate_decode(&x, &result);

    Ok(TrialRecord {
        seed,
        design: design_label(mc).to_string(),
        n: mc.n(),
        k,
        m: mc.m(),
        p: match channel {
            ChannelSpec::Stochastic { p } => *p,
            _ => 1.0,
        },
        e,
        exact: eval.exact,
        false_pos: eval.false_pos,
        false_neg: eval.false_neg,
        decode_micros,
    })
}
