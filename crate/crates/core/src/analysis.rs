//! Disjunctness certification and analytic failure-probability bounds.
//!
//! A matrix is (k, e)-disjunct when every column keeps more than e support
//! entries outside the union of any other <= k columns. That is exactly what
//! makes the distance decoder immune to e adversarial flips per column, and
//! the certifier here checks it exhaustively at small scale. The bound
//! calculators evaluate the closed-form Chernoff/union-bound expressions the
//! designs are sized by; empirical failure rates from the sweep harness are
//! checked against them in the test suites.

use crate::bits::{self};
use crate::comb::{binomial, for_each_combination};
use crate::design::KSDesignParams;
use crate::error::{Error, Result};
use crate::model::{ContactMatrix, SamplingMatrix, SparseSignal};

/// Counterexample to (k, e)-disjunctness: column `index` keeps only
/// `leftover` <= e support entries outside the union of the columns in
/// `set`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjunctWitness {
    pub set: Vec<usize>,
    pub index: usize,
    pub leftover: usize,
}

/// Certification verdict for one (k, e) pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjunctReport {
    pub k: usize,
    pub e: usize,
    pub holds: bool,
    pub witness: Option<DisjunctWitness>,
}

const VERIFY_GUARD: u128 = 10_000_000;

/// |supp(col `index`) \ union of supp(col j), j in `set`| — the quantity
/// Definition-checked by [`verify_disjunct`], recomputable for any witness.
pub fn witness_leftover(mc: &ContactMatrix, set: &[usize], index: usize) -> usize {
    let mut union = vec![0u64; mc.bits().words_per_col()];
    for &j in set {
        bits::or_into(&mut union, mc.bits().col_words(j));
    }
    bits::andnot_weight(mc.bits().col_words(index), &union)
}

/// Exhaustive (k, e)-disjunctness check.
///
/// The leftover count can only shrink as the excluding set grows, so it
/// suffices to test sets of size exactly min(k, n-1); smaller violations are
/// always caught by a superset. Sets are enumerated lexicographically and
/// the excluded column ascending, so the first violation is deterministic.
/// Guarded by n * C(n, k) <= 10^7.
pub fn verify_disjunct(mc: &ContactMatrix, k: usize, e: usize) -> Result<DisjunctReport> {
    let n = mc.n();
    let t = k.min(n - 1);
    let work = binomial(n, t).saturating_mul(n as u128);
    if work > VERIFY_GUARD {
        return Err(Error::GuardExceeded {
            work,
            limit: VERIFY_GUARD,
        });
    }
    let wpc = mc.bits().words_per_col();
    let mut union = vec![0u64; wpc];
    let mut witness = None;
    for_each_combination(n, t, |set| {
        union.iter_mut().for_each(|w| *w = 0);
        for &j in set {
            bits::or_into(&mut union, mc.bits().col_words(j));
        }
        for i in 0..n {
            if set.contains(&i) {
                continue;
            }
            let leftover = bits::andnot_weight(mc.bits().col_words(i), &union);
            if leftover <= e {
                witness = Some(DisjunctWitness {
                    set: set.to_vec(),
                    index: i,
                    leftover,
                });
                return false;
            }
        }
        true
    });
    Ok(DisjunctReport {
        k,
        e,
        holds: witness.is_none(),
        witness,
    })
}

/// Converts a disjunctness witness into the confusion it certifies: signals
/// supported on `set` and on `set + {index}`, plus the sampling matrix in
/// which the adversary has erased the `leftover` private entries of column
/// `index`. Both signals then measure to the same outcome.
pub fn witness_confusion_pair(
    mc: &ContactMatrix,
    witness: &DisjunctWitness,
) -> Result<(SparseSignal, SparseSignal, SamplingMatrix)> {
    let x = SparseSignal::new(mc.n(), witness.set.clone())?;
    let mut extended = witness.set.clone();
    extended.push(witness.index);
    extended.sort_unstable();
    let x_prime = SparseSignal::new(mc.n(), extended)?;

    let mut union = vec![0u64; mc.bits().words_per_col()];
    for &j in &witness.set {
        bits::or_into(&mut union, mc.bits().col_words(j));
    }
    let mut bits = mc.bits().clone();
    let col = bits.col_words_mut(witness.index);
    for (w, &u) in col.iter_mut().zip(&union) {
        *w &= u; // keep only the entries some set column also covers
    }
    let ms = SamplingMatrix::from_bits(mc, bits)?;
    debug_assert_eq!(ms.flips_per_column()[witness.index], witness.leftover);
    Ok((x, x_prime, ms))
}

/// Analytic probability bound with its inputs echoed. `value` is the bound
/// as defined by each calculator; `log10_value` is the unclamped exponent in
/// base 10, kept separately so vanishing bounds stay readable.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub name: &'static str,
    pub value: f64,
    pub log10_value: f64,
    pub inputs: Vec<(&'static str, f64)>,
}

/// ln C(n, k), exact up to floating point, without big integers.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    (1..=k).map(|i| (((n - k + i) as f64) / i as f64).ln()).sum()
}

/// Probability that stochastic dilution exceeds the tolerated per-column
/// flip budget anywhere: n * exp(-delta^2 (1-delta)(1-p) q m / 4).
/// Not clamped; delta = 0 yields the vacuous bound n.
pub fn dilution_overflow_bound(q: f64, m: usize, n: usize, p: f64, delta: f64) -> BoundReport {
    let exponent = -delta * delta * (1.0 - delta) * (1.0 - p) * q * m as f64 / 4.0;
    let ln_value = (n as f64).ln() + exponent;
    BoundReport {
        name: "dilution_overflow",
        value: ln_value.exp(),
        log10_value: ln_value / std::f64::consts::LN_10,
        inputs: vec![
            ("q", q),
            ("m", m as f64),
            ("n", n as f64),
            ("p", p),
            ("delta", delta),
        ],
    }
}

/// Probability that the Bernoulli design fails to be usable at tolerance e:
/// min(1, n C(n,k) exp(-(mu-e)^2 / (2 mu))) with mu = q (1-q)^k m.
/// Reported as 1 whenever e >= mu (the tail form does not apply).
pub fn bernoulli_failure_bound(n: usize, k: usize, q: f64, m: usize, e: usize) -> BoundReport {
    let mu = q * (1.0 - q).powi(k as i32) * m as f64;
    let inputs = vec![
        ("n", n as f64),
        ("k", k as f64),
        ("q", q),
        ("m", m as f64),
        ("e", e as f64),
        ("mu", mu),
    ];
    let (value, log10_value) = if (e as f64) >= mu || mu <= 0.0 {
        (1.0, 0.0)
    } else {
        let ln_value = (n as f64).ln() + ln_binomial(n as u64, k as u64)
            - (mu - e as f64).powi(2) / (2.0 * mu);
        (ln_value.exp().min(1.0), ln_value / std::f64::consts::LN_10)
    };
    BoundReport {
        name: "bernoulli_design_failure",
        value,
        log10_value,
        inputs,
    }
}

/// Exponent form of the same union bound: min(1, n C(n,k) exp(-m q gamma)).
pub fn bernoulli_failure_bound_gamma(
    n: usize,
    k: usize,
    q: f64,
    m: usize,
    gamma: f64,
) -> BoundReport {
    let ln_value = (n as f64).ln() + ln_binomial(n as u64, k as u64) - m as f64 * q * gamma;
    BoundReport {
        name: "bernoulli_design_failure_gamma",
        value: ln_value.exp().min(1.0),
        log10_value: ln_value / std::f64::consts::LN_10,
        inputs: vec![
            ("n", n as f64),
            ("k", k as f64),
            ("q", q),
            ("m", m as f64),
            ("gamma", gamma),
        ],
    }
}

/// n' - k*k' - e. The explicit design is guaranteed (k, e)-disjunct exactly
/// when this is positive: k columns can cover at most k*k' entries of any
/// other column's n'-entry support.
pub fn ks_guarantee_margin(params: &KSDesignParams, k: usize) -> i64 {
    params.nprime as i64 - (k * params.kprime) as i64 - params.e as i64
}

/// Min / max / mean column weight.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightStats {
    pub min: usize,
    pub max: usize,
    pub mean: f64,
}

pub fn column_weight_stats(mc: &ContactMatrix) -> WeightStats {
    let weights: Vec<usize> = (0..mc.n()).map(|j| mc.col_weight(j)).collect();
    WeightStats {
        min: *weights.iter().min().unwrap(),
        max: *weights.iter().max().unwrap(),
        mean: weights.iter().sum::<usize>() as f64 / weights.len() as f64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{build_kautz_singleton, KSDesignParams};
    use crate::model::{dilute, measure};

    fn example_contact() -> ContactMatrix {
        ContactMatrix::from_rows_str(&["101010", "010101", "011011"]).unwrap()
    }

    #[test]
    fn identity_disjunctness() {
        let mc = ContactMatrix::identity(6);
        for k in 1..=5 {
            assert!(verify_disjunct(&mc, k, 0).unwrap().holds, "k={k}");
        }
        let report = verify_disjunct(&mc, 1, 1).unwrap();
        assert!(!report.holds);
        let w = report.witness.unwrap();
        assert_eq!(w.leftover, 1);
        assert_eq!(witness_leftover(&mc, &w.set, w.index), 1);
    }

    #[test]
    fn worked_example_is_not_one_disjunct() {
        let mc = example_contact();
        let report = verify_disjunct(&mc, 1, 0).unwrap();
        assert!(!report.holds);
        // first violation in (set-lex, index-ascending) order: column 4
        // (1-based) is covered by column 2
        let w = report.witness.unwrap();
        assert_eq!(
            w,
            DisjunctWitness {
                set: vec![1],
                index: 3,
                leftover: 0
            }
        );
        assert_eq!(witness_leftover(&mc, &w.set, w.index), w.leftover);
        // columns 3 and 5 (1-based) have identical supports, so that pair is
        // a violation too
        assert_eq!(witness_leftover(&mc, &[4], 2), 0);
    }

    #[test]
    fn ks_repetition_is_two_two_disjunct() {
        let params = KSDesignParams::explicit(3, 2, 1.0, 0.0, 3, 1).unwrap();
        let mc = build_kautz_singleton(&params).unwrap();
        assert!(verify_disjunct(&mc, 2, 2).unwrap().holds);
    }

    #[test]
    fn verify_guard_rejects_large_instances() {
        let mc = ContactMatrix::identity(40);
        assert!(matches!(
            verify_disjunct(&mc, 6, 0),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn disjunctness_is_monotone() {
        let params = KSDesignParams::explicit(49, 2, 1.0, 0.0, 7, 2).unwrap();
        let mc = build_kautz_singleton(&params).unwrap();
        // margin 7 - 2*2 - e > 0 up to e = 2
        assert!(verify_disjunct(&mc, 2, 2).unwrap().holds);
        for k in 1..=2 {
            for e in 0..=2 {
                assert!(verify_disjunct(&mc, k, e).unwrap().holds, "k={k} e={e}");
            }
        }
    }

    #[test]
    fn witness_pair_confuses_the_measurements() {
        // every witness converts into two signals the corrupted matrix
        // cannot distinguish
        let matrices = vec![
            example_contact(),
            ContactMatrix::from_rows_str(&["110", "101", "011"]).unwrap(),
            ContactMatrix::identity(5),
        ];
        let mut checked = 0;
        for mc in &matrices {
            for k in 1..=2 {
                for e in 0..=2 {
                    let report = verify_disjunct(mc, k, e).unwrap();
                    if let Some(w) = report.witness {
                        let (x, x_prime, ms) = witness_confusion_pair(mc, &w).unwrap();
                        assert_eq!(
                            measure(&ms, &x).unwrap(),
                            measure(&ms, &x_prime).unwrap(),
                            "witness {w:?} did not confuse"
                        );
                        assert!(ms.flips_per_column().iter().all(|&f| f <= e));
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 3, "expected several witnesses, got {checked}");
    }

    #[test]
    fn dilution_bound_values() {
        // delta = 0 makes the bound vacuous at n
        let vac = dilution_overflow_bound(0.1, 100, 7, 0.5, 0.0);
        assert!((vac.value - 7.0).abs() < 1e-12);

        // n=1, delta=0.1, p=0.5, qm=800: exp(-0.9)
        let b = dilution_overflow_bound(0.08, 10_000, 1, 0.5, 0.1);
        let expected = 0.4065696597405991;
        assert!((b.value - expected).abs() / expected < 1e-12, "{}", b.value);
        assert!((b.log10_value - expected.log10()).abs() < 1e-9);
    }

    #[test]
    fn dilution_bound_log_linear_in_m() {
        let at = |m: usize| dilution_overflow_bound(0.1, m, 50, 0.6, 0.2);
        let l1 = at(1000).value.ln() - 50f64.ln();
        let l2 = at(2000).value.ln() - 50f64.ln();
        assert!((l2 - 2.0 * l1).abs() < 1e-9);
        for m in (500..10_500).step_by(500) {
            assert!(at(m).value > at(m + 500).value);
        }
    }

    #[test]
    fn design_failure_bound_values() {
        // e >= mu clamps to 1
        let clamped = bernoulli_failure_bound(10, 1, 0.5, 4, 2);
        assert_eq!(clamped.value, 1.0);

        // n=1, k=1, q=0.5, m=40: mu=10, e=5: exp(-25/20)
        let b = bernoulli_failure_bound(1, 1, 0.5, 40, 5);
        let expected = 0.2865047968601901;
        assert!((b.value - expected).abs() / expected < 1e-12, "{}", b.value);

        // growing m only shrinks the bound
        let mut last = f64::INFINITY;
        for i in 0..20 {
            let m = 40 + i * 20;
            let v = bernoulli_failure_bound(30, 2, 0.1, m, 1).value;
            assert!(v <= last, "m={m}: {v} > {last}");
            last = v;
        }
    }

    #[test]
    fn gamma_form_matches_exponent() {
        let (n, k, q, m, gamma) = (50, 2, 0.1, 400, 0.27);
        let b = bernoulli_failure_bound_gamma(n, k, q, m, gamma);
        let expected =
            ((n as f64).ln() + ln_binomial(50, 2) - m as f64 * q * gamma).exp();
        assert!((b.value - expected.min(1.0)).abs() < 1e-12);
    }

    #[test]
    fn ln_binomial_small_values() {
        assert!((ln_binomial(5, 2) - 10f64.ln()).abs() < 1e-12);
        assert!((ln_binomial(10, 0) - 0.0).abs() < 1e-15);
        assert!((ln_binomial(200, 2) - (19_900f64).ln()).abs() < 1e-10);
        assert_eq!(ln_binomial(3, 5), f64::NEG_INFINITY);
    }

    #[test]
    fn margin_examples() {
        let p = KSDesignParams::explicit(3, 2, 1.0, 0.0, 3, 1).unwrap();
        assert_eq!(ks_guarantee_margin(&p, 2), 1);
        let p = KSDesignParams::explicit(9, 2, 1.0, 0.0, 3, 2).unwrap();
        assert_eq!(ks_guarantee_margin(&p, 2), -1);
        // e = n' whenever (1-p)(1+delta) = 1
        let p_star = 1.0 - 1.0 / 1.05;
        let p = KSDesignParams::explicit(3, 2, p_star, 0.05, 3, 1).unwrap();
        assert_eq!(p.e, 3);
        assert!(ks_guarantee_margin(&p, 2) <= -2);
    }

    #[test]
    fn weight_stats() {
        let mut all_ones = crate::bits::BitMatrix::zeros(4, 3);
        for r in 0..4 {
            for c in 0..3 {
                all_ones.set(r, c, true);
            }
        }
        let stats = column_weight_stats(&ContactMatrix::new(all_ones));
        assert_eq!((stats.min, stats.max, stats.mean), (4, 4, 4.0));

        let stats = column_weight_stats(&ContactMatrix::identity(5));
        assert_eq!((stats.min, stats.max, stats.mean), (1, 1, 1.0));

        let params = KSDesignParams::explicit(9, 2, 1.0, 0.0, 3, 2).unwrap();
        let mc = build_kautz_singleton(&params).unwrap();
        let stats = column_weight_stats(&mc);
        assert_eq!((stats.min, stats.max, stats.mean), (3, 3, 3.0));
    }

    #[test]
    fn dilution_bound_dominates_empirical_overflow() {
        // fixed design whose column weights sit in the concentration window,
        // then repeated dilutions: the frequency of any column exceeding the
        // (1-p)(1+delta)-weight flip budget stays under the bound.
        let (q, m, n, p, delta) = (0.1f64, 8000usize, 20usize, 0.5f64, 0.3f64);
        // the design's own slack is irrelevant here, only its density is
        let params =
            crate::design::derive_prob_params(n, 2, p, 2.0 * q, 0.1, Some(m)).unwrap();
        let mc = crate::design::build_probabilistic(&params, 77);
        let bound = dilution_overflow_bound(q, m, n, p, delta).value;
        assert!(bound <= 0.5, "test needs a nonvacuous bound, got {bound}");
        let trials = 300;
        let mut overflows = 0;
        for t in 0..trials {
            let ms = dilute(&mc, p, t).unwrap();
            let bad = (0..n).any(|j| {
                let w = mc.col_weight(j) as f64;
                ms.flips_per_column()[j] as f64 > (1.0 - p) * (1.0 + delta) * w
            });
            if bad {
                overflows += 1;
            }
        }
        let freq = overflows as f64 / trials as f64;
        assert!(
            freq <= bound + 3.0 * (bound / trials as f64).sqrt(),
            "freq {freq} exceeds bound {bound}"
        );
    }
}
