//! Deterministic seed derivation.
//!
//! Every random operation in the crate is a pure function of a `u64` seed.
//! Sub-streams (per column, per trial, per cell) are derived with [`mix64`],
//! a splitmix64 finalizer over `a + GOLDEN * (b + 1)`. The function is stated
//! here (and in the README) so results can be reproduced outside this crate.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// Mixes two words into one; used for all seed derivation.
///
/// `mix64(a, b) = splitmix64_fin(a + GOLDEN * (b + 1))` with wrapping
/// arithmetic, where `splitmix64_fin` is the usual finalizer
/// (`z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
/// z *= 0x94D049BB133111EB; z ^= z >> 31`).
pub fn mix64(a: u64, b: u64) -> u64 {
    let mut z = a.wrapping_add(GOLDEN.wrapping_mul(b.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// RNG for column `col` of a channel application with the given seed.
///
/// Column streams are independent of one another, so corrupting a subset of
/// the columns yields bit-identical results to corrupting all of them and
/// looking at the subset.
pub(crate) fn column_rng(seed: u64, col: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix64(seed, col as u64))
}
