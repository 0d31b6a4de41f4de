//! Domain types and the measurement model.
//!
//! A boolean contact matrix records which test (row) pools which individual
//! (column). The realized sampling matrix is the contact matrix after a
//! corruption channel has erased some ones — independently with probability
//! `1-p` for the stochastic channel, or up to `e` per column for the
//! adversarial one. Measuring a sparse signal ORs the sampling-matrix columns
//! on its support.
//!
//! All indices are 0-based in this API; 1-based conversion happens only at
//! the I/O boundary.

use crate::bits::{self, BitMatrix};
use crate::error::{Error, Result};
use crate::seed::column_rng;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// How a contact matrix was constructed. Carried through serialization so a
/// design can be reproduced from its file alone.
#[derive(Debug, Clone, PartialEq)]
pub enum DesignMeta {
    Bernoulli {
        alpha: f64,
        delta: f64,
        q: f64,
        seed: u64,
    },
    KautzSingleton {
        nprime: usize,
        kprime: usize,
        delta: f64,
    },
}

/// The designed pooling pattern, known to the decoder. Immutable.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactMatrix {
    bits: BitMatrix,
    meta: Option<DesignMeta>,
}

impl ContactMatrix {
    pub fn new(bits: BitMatrix) -> Self {
        ContactMatrix { bits, meta: None }
    }

    pub fn with_meta(bits: BitMatrix, meta: DesignMeta) -> Self {
        ContactMatrix {
            bits,
            meta: Some(meta),
        }
    }

    pub fn from_rows_str(rows: &[&str]) -> Result<Self> {
        Ok(Self::new(BitMatrix::from_rows_str(rows)?))
    }

    pub fn identity(n: usize) -> Self {
        Self::new(BitMatrix::identity(n))
    }

    /// Number of tests (rows).
    pub fn m(&self) -> usize {
        self.bits.rows()
    }

    /// Number of individuals (columns).
    pub fn n(&self) -> usize {
        self.bits.cols()
    }

    pub fn bits(&self) -> &BitMatrix {
        &self.bits
    }

    pub fn design_meta(&self) -> Option<&DesignMeta> {
        self.meta.as_ref()
    }

    pub fn col_weight(&self, j: usize) -> usize {
        self.bits.col_weight(j)
    }

    pub fn col_support(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.bits.col_support(j)
    }
}

/// The realized measurement pattern after corruption. Its column supports are
/// always contained in the originating contact matrix's.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingMatrix {
    bits: BitMatrix,
    flips_per_column: Vec<usize>,
}

impl SamplingMatrix {
    /// The uncorrupted sampling matrix (noiseless channel).
    pub fn uncorrupted(mc: &ContactMatrix) -> Self {
        SamplingMatrix {
            bits: mc.bits().clone(),
            flips_per_column: vec![0; mc.n()],
        }
    }

    /// Wraps explicit bits as the sampling matrix realized from `mc`,
    /// checking columnwise support containment and counting the flips.
    pub fn from_bits(mc: &ContactMatrix, bits: BitMatrix) -> Result<Self> {
        if bits.rows() != mc.m() {
            return Err(Error::DimensionMismatch {
                context: "sampling matrix rows",
                expected: mc.m(),
                got: bits.rows(),
            });
        }
        if bits.cols() != mc.n() {
            return Err(Error::DimensionMismatch {
                context: "sampling matrix columns",
                expected: mc.n(),
                got: bits.cols(),
            });
        }
        let mut flips = Vec::with_capacity(mc.n());
        for j in 0..mc.n() {
            let sub = bits.col_words(j);
            let sup = mc.bits().col_words(j);
            if !bits::is_subset(sub, sup) {
                return Err(Error::SupportNotContained { col: j });
            }
            flips.push(mc.col_weight(j) - bits.col_weight(j));
        }
        Ok(SamplingMatrix {
            bits,
            flips_per_column: flips,
        })
    }

    pub fn m(&self) -> usize {
        self.bits.rows()
    }

    pub fn n(&self) -> usize {
        self.bits.cols()
    }

    pub fn bits(&self) -> &BitMatrix {
        &self.bits
    }

    pub fn flips_per_column(&self) -> &[usize] {
        &self.flips_per_column
    }
}

/// Support of the unknown sparse signal: strictly increasing 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseSignal {
    n: usize,
    support: Vec<usize>,
}

impl SparseSignal {
    pub fn new(n: usize, support: Vec<usize>) -> Result<Self> {
        for (i, &j) in support.iter().enumerate() {
            if j >= n {
                return Err(Error::IndexRange { index: j, n });
            }
            if i > 0 && support[i - 1] >= j {
                return Err(Error::SupportOrder {
                    prev: support[i - 1],
                    next: j,
                });
            }
        }
        Ok(SparseSignal { n, support })
    }

    /// Builds from 1-based indices (the convention of all user-facing I/O).
    pub fn from_one_based(n: usize, support: &[usize]) -> Result<Self> {
        let mut zero_based = Vec::with_capacity(support.len());
        for &j in support {
            if j == 0 || j > n {
                return Err(Error::IndexRange { index: j, n });
            }
            zero_based.push(j - 1);
        }
        Self::new(n, zero_based)
    }

    pub fn empty(n: usize) -> Self {
        SparseSignal {
            n,
            support: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.support.iter().map(|&j| j + 1).collect()
    }

    pub fn cardinality(&self) -> usize {
        self.support.len()
    }
}

/// Boolean test-result vector, packed like one matrix column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Outcome {
    len: usize,
    words: Vec<u64>,
}

impl Outcome {
    pub fn zeros(len: usize) -> Self {
        Outcome {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut y = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                y.words[i / 64] |= 1 << (i % 64);
            }
        }
        y
    }

    pub fn from_bitstring(s: &str) -> Result<Self> {
        let mut bools = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bools.push(false),
                '1' => bools.push(true),
                other => return Err(Error::InvalidBitChar { line: 1, ch: other }),
            }
        }
        Ok(Self::from_bools(&bools))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 != 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }
}

impl std::fmt::Debug for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Outcome({})", self.to_bitstring())
    }
}

/// What the adversary does with its per-column flip budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdversaryStrategy {
    /// Flip nothing.
    None,
    /// Flip a uniformly random subset of size min(e, weight) on each
    /// signal-support column; other columns are untouched.
    Random,
    /// Flip min(e, weight) entries of every column (worst-case volume).
    MaxRandom,
}

/// Corruption channel between the contact and sampling matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelSpec {
    Noiseless,
    Stochastic { p: f64 },
    Adversarial { e: usize, strategy: AdversaryStrategy },
}

impl ChannelSpec {
    pub fn validate(&self) -> Result<()> {
        if let ChannelSpec::Stochastic { p } = self {
            check_probability(*p)?;
        }
        Ok(())
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::ProbabilityRange {
            value: p,
            range: "(0, 1]",
        });
    }
    Ok(())
}

/// Boolean measurement: y_i = OR over the support columns of `ms`.
pub fn measure(ms: &SamplingMatrix, x: &SparseSignal) -> Result<Outcome> {
    if ms.n() != x.n() {
        return Err(Error::DimensionMismatch {
            context: "measure: signal dimension",
            expected: ms.n(),
            got: x.n(),
        });
    }
    let mut y = Outcome::zeros(ms.m());
    for &j in x.support() {
        bits::or_into(&mut y.words, ms.bits.col_words(j));
    }
    Ok(y)
}

/// Keeps each one of column `words` independently with probability `p`;
/// returns the number of flipped entries. Bits are visited in ascending row
/// order so the stream is canonical.
fn dilute_col_in_place(words: &mut [u64], p: f64, rng: &mut ChaCha8Rng) -> usize {
    let mut flips = 0;
    for w in words.iter_mut() {
        let mut remaining = *w;
        while remaining != 0 {
            let bit = remaining & remaining.wrapping_neg();
            remaining &= remaining - 1;
            if !rng.gen_bool(p) {
                *w &= !bit;
                flips += 1;
            }
        }
    }
    flips
}

/// Stochastic channel over all entries: each one of `mc` survives
/// independently with probability `p`. Reproducible from `seed`; column `j`
/// uses the derived stream `mix64(seed, j)`.
pub fn dilute(mc: &ContactMatrix, p: f64, seed: u64) -> Result<SamplingMatrix> {
    let cols: Vec<usize> = (0..mc.n()).collect();
    dilute_columns(mc, &cols, p, seed)
}

/// Stochastic channel materialized only on `cols`; the remaining columns are
/// copied from `mc` unchanged. Because every column has its own seed stream,
/// the listed columns come out bit-identical to a full [`dilute`] with the
/// same seed. Use this O(|cols|·m) path when only the outcome matters.
pub fn dilute_columns(
    mc: &ContactMatrix,
    cols: &[usize],
    p: f64,
    seed: u64,
) -> Result<SamplingMatrix> {
    check_probability(p)?;
    let mut bits = mc.bits().clone();
    let mut flips = vec![0; mc.n()];
    for &j in cols {
        let mut rng = column_rng(seed, j);
        flips[j] = dilute_col_in_place(bits.col_words_mut(j), p, &mut rng);
    }
    Ok(SamplingMatrix {
        bits,
        flips_per_column: flips,
    })
}

/// Flips `count` uniformly chosen support entries of the column to zero.
fn corrupt_col_in_place(words: &mut [u64], count: usize, rng: &mut ChaCha8Rng) -> usize {
    let support: Vec<usize> = words
        .iter()
        .enumerate()
        .flat_map(|(wi, &w)| {
            let mut rows = Vec::with_capacity(w.count_ones() as usize);
            let mut rem = w;
            while rem != 0 {
                rows.push(wi * 64 + rem.trailing_zeros() as usize);
                rem &= rem - 1;
            }
            rows
        })
        .collect();
    let f = count.min(support.len());
    if f == 0 {
        return 0;
    }
    for idx in rand::seq::index::sample(rng, support.len(), f) {
        let r = support[idx];
        words[r / 64] &= !(1u64 << (r % 64));
    }
    f
}

/// Adversarial channel: flips up to `e` support entries per column to zero.
/// Only signal-support columns can affect the outcome, so `Random` restricts
/// itself to them; `MaxRandom` spends the full budget on every column.
pub fn adversarial_corrupt(
    mc: &ContactMatrix,
    x: &SparseSignal,
    e: usize,
    strategy: AdversaryStrategy,
    seed: u64,
) -> Result<SamplingMatrix> {
    if mc.n() != x.n() {
        return Err(Error::DimensionMismatch {
            context: "adversarial_corrupt: signal dimension",
            expected: mc.n(),
            got: x.n(),
        });
    }
    let mut bits = mc.bits().clone();
    let mut flips = vec![0; mc.n()];
    let targets: Vec<usize> = match strategy {
        AdversaryStrategy::None => Vec::new(),
        AdversaryStrategy::Random => x.support().to_vec(),
        AdversaryStrategy::MaxRandom => (0..mc.n()).collect(),
    };
    for &j in &targets {
        let mut rng = column_rng(seed, j);
        flips[j] = corrupt_col_in_place(bits.col_words_mut(j), e, &mut rng);
    }
    Ok(SamplingMatrix {
        bits,
        flips_per_column: flips,
    })
}

/// Applies the channel and measures, returning both for diagnostics.
/// The sampling matrix is fully materialized; use [`sample_outcome`] for the
/// lazy fast path when only the outcome is needed.
pub fn end_to_end_sample(
    mc: &ContactMatrix,
    x: &SparseSignal,
    ch: &ChannelSpec,
    seed: u64,
) -> Result<(SamplingMatrix, Outcome)> {
    let ms = match *ch {
        ChannelSpec::Noiseless => SamplingMatrix::uncorrupted(mc),
        ChannelSpec::Stochastic { p } => dilute(mc, p, seed)?,
        ChannelSpec::Adversarial { e, strategy } => {
            adversarial_corrupt(mc, x, e, strategy, seed)?
        }
    };
    let y = measure(&ms, x)?;
    Ok((ms, y))
}

/// Channel + measurement without materializing the sampling matrix: only the
/// signal-support columns are realized (O(k·m) instead of O(n·m)).
/// Bit-identical to measuring the [`end_to_end_sample`] matrix with the same
/// seed, because column streams are independent.
pub fn sample_outcome(
    mc: &ContactMatrix,
    x: &SparseSignal,
    ch: &ChannelSpec,
    seed: u64,
) -> Result<Outcome> {
    if mc.n() != x.n() {
        return Err(Error::DimensionMismatch {
            context: "sample_outcome: signal dimension",
            expected: mc.n(),
            got: x.n(),
        });
    }
    ch.validate()?;
    let wpc = mc.bits().words_per_col();
    let mut acc = vec![0u64; wpc];
    let mut scratch = vec![0u64; wpc];
    for &j in x.support() {
        scratch.copy_from_slice(mc.bits().col_words(j));
        match *ch {
            ChannelSpec::Noiseless => {}
            ChannelSpec::Stochastic { p } => {
                let mut rng = column_rng(seed, j);
                dilute_col_in_place(&mut scratch, p, &mut rng);
            }
            ChannelSpec::Adversarial { e, strategy } => match strategy {
                AdversaryStrategy::None => {}
                AdversaryStrategy::Random | AdversaryStrategy::MaxRandom => {
                    let mut rng = column_rng(seed, j);
                    corrupt_col_in_place(&mut scratch, e, &mut rng);
                }
            },
        }
        bits::or_into(&mut acc, &scratch);
    }
    Ok(Outcome {
        len: mc.m(),
        words: acc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// 3x6 contact matrix used across the test suite.
    pub(crate) fn example_contact() -> ContactMatrix {
        ContactMatrix::from_rows_str(&["101010", "010101", "011011"]).unwrap()
    }

    #[test]
    fn measure_worked_example() {
        let mc = example_contact();
        let ms_bits = BitMatrix::from_rows_str(&["100010", "010101", "010011"]).unwrap();
        let ms = SamplingMatrix::from_bits(&mc, ms_bits).unwrap();
        let x = SparseSignal::from_one_based(6, &[3, 4]).unwrap();
        let y = measure(&ms, &x).unwrap();
        assert_eq!(y, Outcome::from_bools(&[false, true, false]));
        // only person 3's contacts went unregistered in this realization
        assert_eq!(ms.flips_per_column(), &[0, 0, 2, 0, 0, 0]);
    }

    #[test]
    fn measure_identity_maps_support() {
        let mc = ContactMatrix::identity(7);
        let ms = SamplingMatrix::uncorrupted(&mc);
        let x = SparseSignal::new(7, vec![1, 4, 6]).unwrap();
        let y = measure(&ms, &x).unwrap();
        assert_eq!(y.support(), vec![1, 4, 6]);
    }

    #[test]
    fn measure_empty_support_is_zero() {
        let mc = example_contact();
        let ms = SamplingMatrix::uncorrupted(&mc);
        let y = measure(&ms, &SparseSignal::empty(6)).unwrap();
        assert_eq!(y.weight(), 0);
    }

    #[test]
    fn measure_dimension_mismatch() {
        let mc = example_contact();
        let ms = SamplingMatrix::uncorrupted(&mc);
        let x = SparseSignal::new(5, vec![0]).unwrap();
        assert!(matches!(
            measure(&ms, &x),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sampling_matrix_containment_enforced() {
        let mc = example_contact();
        let mut bad = mc.bits().clone();
        // turn on a zero entry of column 0
        bad.set(1, 0, true);
        assert_eq!(
            SamplingMatrix::from_bits(&mc, bad),
            Err(Error::SupportNotContained { col: 0 })
        );
    }

    #[test]
    fn signal_validation() {
        assert!(SparseSignal::new(4, vec![0, 2, 3]).is_ok());
        assert!(matches!(
            SparseSignal::new(4, vec![0, 0]),
            Err(Error::SupportOrder { .. })
        ));
        assert!(matches!(
            SparseSignal::new(4, vec![2, 1]),
            Err(Error::SupportOrder { .. })
        ));
        assert!(matches!(
            SparseSignal::new(4, vec![4]),
            Err(Error::IndexRange { .. })
        ));
        assert!(matches!(
            SparseSignal::from_one_based(4, &[0]),
            Err(Error::IndexRange { .. })
        ));
        let x = SparseSignal::from_one_based(6, &[3, 4]).unwrap();
        assert_eq!(x.support(), &[2, 3]);
        assert_eq!(x.one_based(), vec![3, 4]);
    }

    #[test]
    fn dilute_p_one_is_identity() {
        let mc = example_contact();
        let ms = dilute(&mc, 1.0, 7).unwrap();
        assert_eq!(ms.bits(), mc.bits());
        assert!(ms.flips_per_column().iter().all(|&f| f == 0));
    }

    #[test]
    fn dilute_all_zero_unchanged() {
        let mc = ContactMatrix::new(BitMatrix::zeros(5, 4));
        let ms = dilute(&mc, 0.3, 99).unwrap();
        assert_eq!(ms.bits().count_ones(), 0);
        assert!(ms.flips_per_column().iter().all(|&f| f == 0));
    }

    #[test]
    fn dilute_rejects_bad_probability() {
        let mc = example_contact();
        for p in [0.0, -0.1, 1.5, f64::NAN] {
            assert!(matches!(
                dilute(&mc, p, 0),
                Err(Error::ProbabilityRange { .. })
            ));
        }
    }

    #[test]
    fn dilute_survivors_within_binomial_band() {
        // 10000x1 all-ones column, p = 0.5: surviving weight within 3 sigma
        // of 5000 (sigma = 50).
        let mut bits = BitMatrix::zeros(10_000, 1);
        for r in 0..10_000 {
            bits.set(r, 0, true);
        }
        let mc = ContactMatrix::new(bits);
        let ms = dilute(&mc, 0.5, 0xD17E).unwrap();
        let surviving = ms.bits().col_weight(0);
        assert!(
            (4850..=5150).contains(&surviving),
            "surviving weight {surviving} outside 5000 +/- 150"
        );
        assert_eq!(ms.flips_per_column()[0], 10_000 - surviving);
    }

    #[test]
    fn dilute_mean_over_trials_matches_expectation() {
        // mean surviving weight of a fixed weight-100 column over T trials
        // stays within 4 standard errors of p*w.
        let mut bits = BitMatrix::zeros(200, 1);
        for r in 0..100 {
            bits.set(2 * r, 0, true);
        }
        let mc = ContactMatrix::new(bits);
        let (w, p, trials) = (100.0f64, 0.7f64, 2000u64);
        let mut total = 0usize;
        for t in 0..trials {
            total += dilute(&mc, p, t).unwrap().bits().col_weight(0);
        }
        let mean = total as f64 / trials as f64;
        let se = (w * p * (1.0 - p) / trials as f64).sqrt();
        assert!(
            (mean - p * w).abs() <= 4.0 * se,
            "mean {mean} vs expected {} (se {se})",
            p * w
        );
    }

    #[test]
    fn dilute_is_deterministic() {
        let mc = example_contact();
        assert_eq!(dilute(&mc, 0.4, 5).unwrap(), dilute(&mc, 0.4, 5).unwrap());
        assert_ne!(
            dilute(&mc, 0.4, 5).unwrap().bits(),
            dilute(&mc, 0.4, 6).unwrap().bits()
        );
    }

    #[test]
    fn dilute_columns_matches_full_dilution() {
        let mc = example_contact();
        for seed in [0u64, 1, 99, 12345] {
            let full = dilute(&mc, 0.5, seed).unwrap();
            let lazy = dilute_columns(&mc, &[2, 3], 0.5, seed).unwrap();
            for j in [2usize, 3] {
                assert_eq!(lazy.bits().col_words(j), full.bits().col_words(j));
                assert_eq!(lazy.flips_per_column()[j], full.flips_per_column()[j]);
            }
            // untouched columns keep the contact bits
            for j in [0usize, 1, 4, 5] {
                assert_eq!(lazy.bits().col_words(j), mc.bits().col_words(j));
                assert_eq!(lazy.flips_per_column()[j], 0);
            }
        }
    }

    #[test]
    fn adversary_zero_budget_is_identity() {
        let mc = example_contact();
        let x = SparseSignal::from_one_based(6, &[3, 4]).unwrap();
        for strategy in [
            AdversaryStrategy::None,
            AdversaryStrategy::Random,
            AdversaryStrategy::MaxRandom,
        ] {
            let ms = adversarial_corrupt(&mc, &x, 0, strategy, 3).unwrap();
            assert_eq!(ms.bits(), mc.bits());
        }
    }

    #[test]
    fn adversary_full_budget_erases_support_columns() {
        let mc = example_contact();
        let x = SparseSignal::from_one_based(6, &[3, 4]).unwrap();
        let max_w = (0..6).map(|j| mc.col_weight(j)).max().unwrap();
        let ms = adversarial_corrupt(&mc, &x, max_w, AdversaryStrategy::MaxRandom, 3).unwrap();
        for &j in x.support() {
            assert_eq!(ms.bits().col_weight(j), 0);
        }
        // max-random spends the budget everywhere
        for j in 0..6 {
            assert_eq!(ms.bits().col_weight(j), 0);
        }
    }

    #[test]
    fn adversary_random_budget_one() {
        let mc = example_contact();
        let x = SparseSignal::from_one_based(6, &[3, 4]).unwrap();
        let ms = adversarial_corrupt(&mc, &x, 1, AdversaryStrategy::Random, 11).unwrap();
        assert_eq!(ms.flips_per_column()[2], 1);
        assert_eq!(ms.flips_per_column()[3], 1);
        for j in 0..6 {
            assert!(ms.flips_per_column()[j] <= 1);
            if !x.support().contains(&j) {
                assert_eq!(ms.flips_per_column()[j], 0);
            }
        }
    }

    #[test]
    fn end_to_end_noiseless_identity() {
        let mc = ContactMatrix::identity(5);
        let x = SparseSignal::from_one_based(5, &[2]).unwrap();
        let (_, y) = end_to_end_sample(&mc, &x, &ChannelSpec::Noiseless, 0).unwrap();
        assert_eq!(y.support(), vec![1]);
    }

    #[test]
    fn end_to_end_stochastic_p_one_equals_noiseless() {
        let mc = example_contact();
        let x = SparseSignal::from_one_based(6, &[3, 4]).unwrap();
        let (ms_s, y_s) =
            end_to_end_sample(&mc, &x, &ChannelSpec::Stochastic { p: 1.0 }, 42).unwrap();
        let (ms_n, y_n) = end_to_end_sample(&mc, &x, &ChannelSpec::Noiseless, 42).unwrap();
        assert_eq!(ms_s, ms_n);
        assert_eq!(y_s, y_n);
    }

    #[test]
    fn end_to_end_worked_example_outcome() {
        // Seed chosen so that with p = 0.5 only the second test comes back
        // positive for the infected pair {3, 4}.
        let mc = example_contact();
        let x = SparseSignal::from_one_based(6, &[3, 4]).unwrap();
        let (ms, y) = end_to_end_sample(&mc, &x, &ChannelSpec::Stochastic { p: 0.5 }, 3).unwrap();
        assert_eq!(y, Outcome::from_bools(&[false, true, false]));
        // containment still holds for the realized matrix
        for j in 0..6 {
            assert!(bits::is_subset(
                ms.bits().col_words(j),
                mc.bits().col_words(j)
            ));
        }
    }

    #[test]
    fn lazy_outcome_matches_materialized_channels() {
        let mc = example_contact();
        let x = SparseSignal::from_one_based(6, &[1, 4]).unwrap();
        let channels = [
            ChannelSpec::Noiseless,
            ChannelSpec::Stochastic { p: 0.6 },
            ChannelSpec::Adversarial {
                e: 1,
                strategy: AdversaryStrategy::Random,
            },
            ChannelSpec::Adversarial {
                e: 2,
                strategy: AdversaryStrategy::MaxRandom,
            },
            ChannelSpec::Adversarial {
                e: 1,
                strategy: AdversaryStrategy::None,
            },
        ];
        for ch in &channels {
            for seed in 0..20u64 {
                let (ms, y_full) = end_to_end_sample(&mc, &x, ch, seed).unwrap();
                let y_lazy = sample_outcome(&mc, &x, ch, seed).unwrap();
                assert_eq!(y_lazy, y_full, "channel {ch:?} seed {seed}");
                let y_again = measure(&ms, &x).unwrap();
                assert_eq!(y_again, y_full);
            }
        }
    }
}
