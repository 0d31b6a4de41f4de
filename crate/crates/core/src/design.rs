//! Contact-matrix designs: parameter derivation and construction.
//!
//! Two constructions are provided. The Bernoulli design fills an m x n
//! matrix i.i.d. with ones of density q = alpha/k and sizes m so that the
//! matrix tolerates e = ceil((1-p)(1+3*delta)*q*m) erased entries per column.
//! The explicit design concatenates a Reed-Solomon code over GF(n') with the
//! basis-vector map, giving n'^2 rows, constant column weight n', and
//! pairwise column intersections below k'.

use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::gf::{FieldSpec, RSCode};
use crate::model::{ContactMatrix, DesignMeta};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Resolved parameters of the Bernoulli design.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbDesignParams {
    pub n: usize,
    pub k: usize,
    pub p: f64,
    pub alpha: f64,
    pub delta: f64,
    /// Entry density q = alpha / k.
    pub q: f64,
    pub m: usize,
    /// Decoder tolerance e = ceil((1-p)(1+3*delta)*q*m).
    pub e: usize,
    /// Exponent constant of the size bound, see [`gamma_constant`].
    pub gamma: f64,
}

/// gamma = (3^-alpha - (1-p)(1+3*delta))^2 / 2^(1-alpha).
///
/// The design is only sound when the base of the square is positive (the
/// expected number of rows private to a column must exceed the tolerated
/// flip count); a non-positive base is rejected. For small alpha and delta,
/// gamma approaches p^2 / 2.
pub fn gamma_constant(alpha: f64, delta: f64, p: f64) -> Result<f64> {
    let base = 3f64.powf(-alpha) - (1.0 - p) * (1.0 + 3.0 * delta);
    if base <= 0.0 {
        return Err(Error::Infeasible(format!(
            "need 3^-alpha > (1-p)(1+3*delta), but {:.6} <= {:.6} \
             (alpha={alpha}, delta={delta}, p={p})",
            3f64.powf(-alpha),
            (1.0 - p) * (1.0 + 3.0 * delta),
        )));
    }
    Ok(base * base / 2f64.powf(1.0 - alpha))
}

/// Row-count bound k^2 ln(n/k) / (alpha * gamma) of the Bernoulli design
/// (natural log; the constant is calibrated empirically, not prescribed).
pub fn prob_m_bound(n: usize, k: usize, alpha: f64, gamma: f64) -> f64 {
    (k * k) as f64 * ((n as f64) / (k as f64)).ln() / (alpha * gamma)
}

/// Derives all Bernoulli-design parameters. `m_override` replaces the
/// derived row count (the tolerance e is recomputed for the actual m).
pub fn derive_prob_params(
    n: usize,
    k: usize,
    p: f64,
    alpha: f64,
    delta: f64,
    m_override: Option<usize>,
) -> Result<ProbDesignParams> {
    if k == 0 || k >= n {
        return Err(Error::Infeasible(format!(
            "sparsity k must satisfy 1 <= k < n (k={k}, n={n})"
        )));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::ProbabilityRange {
            value: p,
            range: "(0, 1]",
        });
    }
    if alpha.is_nan() || delta.is_nan() || alpha <= 0.0 || delta <= 0.0 {
        return Err(Error::Infeasible(format!(
            "alpha and delta must be positive (alpha={alpha}, delta={delta})"
        )));
    }
    let q = alpha / k as f64;
    if q > 1.0 {
        return Err(Error::Infeasible(format!(
            "density q = alpha/k = {q} exceeds 1"
        )));
    }
    let gamma = gamma_constant(alpha, delta, p)?;
    let m = match m_override {
        Some(m) if m > 0 => m,
        Some(_) => {
            return Err(Error::Infeasible("m override must be positive".into()));
        }
        None => prob_m_bound(n, k, alpha, gamma).ceil() as usize,
    };
    let e = ((1.0 - p) * (1.0 + 3.0 * delta) * q * m as f64).ceil() as usize;
    Ok(ProbDesignParams {
        n,
        k,
        p,
        alpha,
        delta,
        q,
        m,
        e,
        gamma,
    })
}

/// Samples the Bernoulli contact matrix: every entry is one independently
/// with probability `params.q`. Entries are drawn column-major, so the
/// matrix is a pure function of (params, seed).
pub fn build_probabilistic(params: &ProbDesignParams, seed: u64) -> ContactMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bits = BitMatrix::zeros(params.m, params.n);
    for c in 0..params.n {
        for r in 0..params.m {
            if rng.gen_bool(params.q) {
                bits.set(r, c, true);
            }
        }
    }
    ContactMatrix::with_meta(
        bits,
        DesignMeta::Bernoulli {
            alpha: params.alpha,
            delta: params.delta,
            q: params.q,
            seed,
        },
    )
}

/// Resolved parameters of the explicit Reed-Solomon design.
#[derive(Debug, Clone, PartialEq)]
pub struct KSDesignParams {
    pub n: usize,
    pub k: usize,
    pub p: f64,
    pub delta: f64,
    /// Field order / outer code length; a prime power. Column weight and the
    /// number of row blocks both equal n'.
    pub nprime: usize,
    /// Outer code dimension.
    pub kprime: usize,
    /// Row count m = n'^2.
    pub m: usize,
    /// Decoder tolerance e = ceil((1-p)(1+delta)*n').
    pub e: usize,
}

impl KSDesignParams {
    /// Builds parameters from an explicit (n', k') choice, checking only
    /// structural validity — not the disjunctness margin. Useful when the
    /// caller wants a matrix regardless of any recovery guarantee.
    pub fn explicit(
        n: usize,
        k: usize,
        p: f64,
        delta: f64,
        nprime: usize,
        kprime: usize,
    ) -> Result<KSDesignParams> {
        if n == 0 || k == 0 {
            return Err(Error::Infeasible(format!(
                "n and k must be positive (n={n}, k={k})"
            )));
        }
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::ProbabilityRange {
                value: p,
                range: "(0, 1]",
            });
        }
        if delta.is_nan() || delta < 0.0 {
            return Err(Error::Infeasible(format!("delta must be >= 0 ({delta})")));
        }
        crate::gf::prime_power(nprime as u64)?;
        if kprime == 0 || kprime > nprime {
            return Err(Error::Infeasible(format!(
                "code dimension k'={kprime} outside 1..=n'={nprime}"
            )));
        }
        if !column_capacity_at_least(nprime, kprime, n) {
            return Err(Error::Infeasible(format!(
                "n={n} exceeds the {nprime}^{kprime} available codewords"
            )));
        }
        Ok(KSDesignParams {
            n,
            k,
            p,
            delta,
            nprime,
            kprime,
            m: nprime * nprime,
            e: ks_tolerance(p, delta, nprime),
        })
    }
}

fn ks_tolerance(p: f64, delta: f64, nprime: usize) -> usize {
    ((1.0 - p) * (1.0 + delta) * nprime as f64).ceil() as usize
}

/// n'^k' >= n, without overflowing.
fn column_capacity_at_least(nprime: usize, kprime: usize, n: usize) -> bool {
    let mut acc: u128 = 1;
    for _ in 0..kprime {
        acc = acc.saturating_mul(nprime as u128);
        if acc >= n as u128 {
            return true;
        }
    }
    acc >= n as u128
}

/// Prime powers 2..=2^16 in increasing order.
fn prime_powers_ascending() -> Vec<usize> {
    const LIMIT: usize = 1 << 16;
    let mut is_composite = vec![false; LIMIT + 1];
    let mut out = Vec::new();
    for p in 2..=LIMIT {
        if is_composite[p] {
            continue;
        }
        let mut mult = p * p;
        while mult <= LIMIT {
            is_composite[mult] = true;
            mult += p;
        }
        let mut power = p;
        while power <= LIMIT {
            out.push(power);
            match power.checked_mul(p) {
                Some(next) => power = next,
                None => break,
            }
        }
    }
    out.sort_unstable();
    out
}

/// Picks the smallest prime power n' (and smallest k' with n'^k' >= n) such
/// that the disjunctness margin n' - k*k' > e holds for the resulting
/// tolerance e = ceil((1-p)(1+delta)*n').
pub fn derive_ks_params(n: usize, k: usize, p: f64, delta: f64) -> Result<KSDesignParams> {
    if n == 0 || k == 0 {
        return Err(Error::Infeasible(format!(
            "n and k must be positive (n={n}, k={k})"
        )));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::ProbabilityRange {
            value: p,
            range: "(0, 1]",
        });
    }
    if delta.is_nan() || delta < 0.0 {
        return Err(Error::Infeasible(format!("delta must be >= 0 ({delta})")));
    }
    let mut best_shortfall: Option<(usize, usize, usize, i64)> = None;
    for nprime in prime_powers_ascending() {
        let kprime = match (1..=nprime).find(|&kp| column_capacity_at_least(nprime, kp, n)) {
            Some(kp) => kp,
            None => continue,
        };
        let e = ks_tolerance(p, delta, nprime);
        let margin = nprime as i64 - (k * kprime) as i64 - e as i64;
        if margin > 0 {
            return KSDesignParams::explicit(n, k, p, delta, nprime, kprime);
        }
        if best_shortfall.is_none_or(|(.., best)| margin > best) {
            best_shortfall = Some((nprime, kprime, e, margin));
        }
    }
    let detail = best_shortfall
        .map(|(np, kp, e, _)| format!("closest candidate n'={np}: {np} - {k}*{kp} <= {e}"))
        .unwrap_or_default();
    Err(Error::Infeasible(format!(
        "no prime power n' <= 2^16 satisfies n' - k*k' > ceil((1-p)(1+delta)*n') \
         for n={n}, k={k}, p={p}, delta={delta}; {detail}"
    )))
}

/// Builds the explicit contact matrix: column j encodes the j-th message's
/// codeword, with every symbol c replaced by the basis vector with a one in
/// row c of its n'-row block. Deterministic; no randomness involved.
pub fn build_kautz_singleton(params: &KSDesignParams) -> Result<ContactMatrix> {
    let field = FieldSpec::new(params.nprime as u64)?;
    let code = RSCode::new(field, params.kprime)?;
    let messages = code.enumerate_messages(params.n)?;
    let mut bits = BitMatrix::zeros(params.m, params.n);
    for (j, message) in messages.iter().enumerate() {
        let codeword = code.encode(message)?;
        for (block, &symbol) in codeword.iter().enumerate() {
            bits.set(block * params.nprime + symbol as usize, j, true);
        }
    }
    Ok(ContactMatrix::with_meta(
        bits,
        DesignMeta::KautzSingleton {
            nprime: params.nprime,
            kprime: params.kprime,
            delta: params.delta,
        },
    ))
}
