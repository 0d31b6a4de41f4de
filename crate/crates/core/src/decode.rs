//! The distance decoder and a brute-force consistency oracle.
//!
//! The decoder declares column j present iff at most `e` of its contact
//! support entries are missing from the outcome: |supp(c_j) \ supp(y)| <= e.
//! It is a per-column threshold test — there is no ranking and no tie to
//! break — and runs in O(m*n) bit operations (one AND-NOT + popcount pass
//! over each column's packed words). The tolerance e always comes from the
//! caller; the decoder never guesses it.

use crate::bits::{self};
use crate::comb::{binomial, for_each_combination};
use crate::error::{Error, Result};
use crate::model::{ContactMatrix, Outcome, SparseSignal};

/// Candidate support reported by the decoder, ascending and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    pub candidates: Vec<usize>,
    /// Set when more than the requested sparsity k passed the test. The
    /// candidate list is never truncated.
    pub oversized: bool,
}

/// Distance decoding of outcome `y` against contact matrix `mc` with
/// tolerance `e`. Pass the target sparsity `k` to have the `oversized` flag
/// populated; `None` leaves it false.
pub fn distance_decode(
    mc: &ContactMatrix,
    y: &Outcome,
    e: usize,
    k: Option<usize>,
) -> Result<DecodeResult> {
    if y.len() != mc.m() {
        return Err(Error::DimensionMismatch {
            context: "distance_decode: outcome length",
            expected: mc.m(),
            got: y.len(),
        });
    }
    let mut candidates = Vec::new();
    for j in 0..mc.n() {
        let uncovered = bits::andnot_weight(mc.bits().col_words(j), y.words());
        if uncovered <= e {
            candidates.push(j);
        }
    }
    let oversized = k.is_some_and(|k| candidates.len() > k);
    Ok(DecodeResult {
        candidates,
        oversized,
    })
}

const ORACLE_GUARD: u128 = 1_000_000;

/// Every support S with |S| <= k that is consistent with outcome `y`:
/// (a) supp(y) is covered by the union of the contact columns of S, and
/// (b) each column of S has at most e support entries outside supp(y).
/// These are exactly the supports for which some flip pattern with at most e
/// flips per column produces y. Results are ordered by size, then
/// lexicographically. Enumeration is guarded by sum_{i<=k} C(n,i) <= 10^6.
pub fn oracle_consistent_supports(
    mc: &ContactMatrix,
    y: &Outcome,
    k: usize,
    e: usize,
) -> Result<Vec<Vec<usize>>> {
    let work: u128 = (0..=k).map(|t| binomial(mc.n(), t)).sum();
    if work > ORACLE_GUARD {
        return Err(Error::GuardExceeded {
            work,
            limit: ORACLE_GUARD,
        });
    }
    // (b) is the decoder's own test, so consistent supports only ever draw
    // from the decoder's candidate set.
    let eligible = distance_decode(mc, y, e, None)?.candidates;
    let wpc = mc.bits().words_per_col();
    let mut out = Vec::new();
    let mut union = vec![0u64; wpc];
    for t in 0..=k.min(eligible.len()) {
        for_each_combination(eligible.len(), t, |picks| {
            union.iter_mut().for_each(|w| *w = 0);
            for &pos in picks {
                bits::or_into(&mut union, mc.bits().col_words(eligible[pos]));
            }
            if bits::is_subset(y.words(), &union) {
                out.push(picks.iter().map(|&pos| eligible[pos]).collect());
            }
            true
        });
    }
    Ok(out)
}

/// The inclusion-minimal members of a list of supports.
pub fn inclusion_minimal(supports: &[Vec<usize>]) -> Vec<Vec<usize>> {
    supports
        .iter()
        .filter(|s| {
            !supports
                .iter()
                .any(|t| t.len() < s.len() && t.iter().all(|j| s.contains(j)))
        })
        .cloned()
        .collect()
}

/// Set comparison of a decode result against the true support.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecodeEval {
    pub exact: bool,
    pub false_pos: usize,
    pub false_neg: usize,
}

pub fn evaluate_decode(truth: &SparseSignal, result: &DecodeResult) -> DecodeEval {
    let false_pos = result
        .candidates
        .iter()
        .filter(|j| !truth.support().contains(j))
        .count();
    let false_neg = truth
        .support()
        .iter()
        .filter(|j| !result.candidates.contains(j))
        .count();
    DecodeEval {
        exact: false_pos == 0 && false_neg == 0,
        false_pos,
        false_neg,
    }
}
