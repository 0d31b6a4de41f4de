//! Finite fields GF(p^s) up to order 2^16 and Reed-Solomon evaluation
//! encoding.
//!
//! Elements are canonical integers in `[0, order)`: an extension-field
//! element encodes its polynomial coefficients base `p` (the value
//! `c_{s-1} p^{s-1} + ... + c_1 p + c_0` stands for the residue class of
//! `c_{s-1} x^{s-1} + ... + c_0`). Prime fields use direct modular
//! arithmetic; extension fields multiply through log/antilog tables built at
//! construction. Only encoding is provided, no error correction.

use crate::error::{Error, Result};

const MAX_ORDER: u64 = 1 << 16;

/// A concrete finite field: order, modulus, and multiplication tables.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    prime: u64,
    degree: u32,
    order: u64,
    /// Monic irreducible modulus, constant coefficient first; empty for
    /// prime fields.
    modulus: Vec<u64>,
    /// log[a] for a in 1..order; log[0] is unused.
    log: Vec<u32>,
    /// exp[i] = g^i, doubled so `exp[log a + log b]` needs no reduction.
    exp: Vec<u64>,
}

impl FieldSpec {
    /// Field of the given order with the default modulus (the irreducible
    /// polynomial with the smallest coefficient encoding).
    pub fn new(order: u64) -> Result<FieldSpec> {
        let (prime, degree) = factor_prime_power(order)?;
        if degree == 1 {
            return Ok(FieldSpec {
                prime,
                degree,
                order,
                modulus: Vec::new(),
                log: Vec::new(),
                exp: Vec::new(),
            });
        }
        let modulus = default_modulus(prime, degree);
        Self::from_parts(prime, degree, modulus)
    }

    /// Extension field with an explicit monic irreducible modulus
    /// (constant coefficient first, length `degree + 1`).
    pub fn with_modulus(prime: u64, degree: u32, modulus: &[u64]) -> Result<FieldSpec> {
        if !is_prime(prime) {
            return Err(Error::InvalidField(format!("{prime} is not prime")));
        }
        if degree < 2 {
            return Err(Error::InvalidField(
                "explicit modulus only applies to extension fields (degree >= 2)".into(),
            ));
        }
        let order = checked_pow(prime, degree)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| {
                Error::InvalidField(format!("order {prime}^{degree} exceeds 2^16"))
            })?;
        if modulus.len() != degree as usize + 1 {
            return Err(Error::InvalidField(format!(
                "modulus must have degree {degree} ({} coefficients)",
                degree + 1
            )));
        }
        if modulus[degree as usize] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if modulus.iter().any(|&c| c >= prime) {
            return Err(Error::InvalidField(format!(
                "modulus coefficients must lie in [0, {prime})"
            )));
        }
        if !is_irreducible(modulus, prime) {
            return Err(Error::InvalidField(format!(
                "modulus {} is reducible over GF({prime})",
                coeffs_string(modulus)
            )));
        }
        let _ = order;
        Self::from_parts(prime, degree, modulus.to_vec())
    }

    fn from_parts(prime: u64, degree: u32, modulus: Vec<u64>) -> Result<FieldSpec> {
        let order = checked_pow(prime, degree).expect("order bounded by construction");
        let mut field = FieldSpec {
            prime,
            degree,
            order,
            modulus,
            log: Vec::new(),
            exp: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Modulus coefficients (constant first); empty for prime fields.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.order
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.check(a);
        self.check(b);
        if self.degree == 1 {
            (a + b) % self.prime
        } else if self.prime == 2 {
            a ^ b
        } else {
            self.digitwise(a, b, |x, y| (x + y) % self.prime)
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.check(a);
        self.check(b);
        if self.degree == 1 {
            (a + self.prime - b) % self.prime
        } else if self.prime == 2 {
            a ^ b
        } else {
            self.digitwise(a, b, |x, y| (x + self.prime - y) % self.prime)
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.check(a);
        self.check(b);
        if self.degree == 1 {
            a * b % self.prime
        } else if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        self.check(a);
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        if self.degree == 1 {
            Ok(self.pow(a, self.prime - 2))
        } else {
            let span = self.order - 1;
            Ok(self.exp[(span - self.log[a as usize] as u64) as usize])
        }
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        self.check(a);
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    #[inline]
    fn check(&self, a: u64) {
        assert!(a < self.order, "element {a} outside GF({})", self.order);
    }

    fn digitwise(&self, a: u64, b: u64, op: impl Fn(u64, u64) -> u64) -> u64 {
        let p = self.prime;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.degree {
            out += op(a % p, b % p) * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        out
    }

    /// Multiplication through the polynomial representation; used only while
    /// building the tables.
    fn slow_mul(&self, a: u64, b: u64) -> u64 {
        let pa = elt_to_poly(a, self.prime, self.degree);
        let pb = elt_to_poly(b, self.prime, self.degree);
        let prod = poly_mul(&pa, &pb, self.prime);
        let rem = poly_rem(&prod, &self.modulus, self.prime);
        poly_to_elt(&rem, self.prime)
    }

    fn slow_pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn build_tables(&mut self) {
        let q = self.order;
        let span = (q - 1) as usize;
        let factors = prime_factors(q - 1);
        let generator = (2..q)
            .find(|&g| factors.iter().all(|&f| self.slow_pow(g, (q - 1) / f) != 1))
            .expect("every finite field has a primitive element");
        let mut exp = vec![0u64; 2 * span];
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u64;
        for (i, slot) in exp.iter_mut().enumerate().take(span) {
            *slot = acc;
            log[acc as usize] = i as u32;
            acc = self.slow_mul(acc, generator);
        }
        debug_assert_eq!(acc, 1, "generator order must be q-1");
        for i in 0..span {
            exp[span + i] = exp[i];
        }
        self.exp = exp;
        self.log = log;
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.degree == 1 {
            write!(f, "GF({})", self.prime)
        } else {
            write!(
                f,
                "GF({}^{})/{}",
                self.prime,
                self.degree,
                coeffs_string(&self.modulus)
            )
        }
    }
}

/// Reed-Solomon code evaluating degree-< k' polynomials at every field
/// element in canonical order; length equals the field order.
#[derive(Debug, Clone)]
pub struct RSCode {
    field: FieldSpec,
    dimension: usize,
}

impl RSCode {
    pub fn new(field: FieldSpec, dimension: usize) -> Result<RSCode> {
        if dimension == 0 || dimension as u64 > field.order() {
            return Err(Error::InvalidField(format!(
                "RS dimension {dimension} outside 1..={}",
                field.order()
            )));
        }
        Ok(RSCode { field, dimension })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn length(&self) -> usize {
        self.field.order() as usize
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Evaluates the message polynomial (message[i] is the coefficient of
    /// x^i) at every field element 0, 1, ..., q-1.
    pub fn encode(&self, message: &[u64]) -> Result<Vec<u64>> {
        if message.len() != self.dimension {
            return Err(Error::MessageLength {
                expected: self.dimension,
                got: message.len(),
            });
        }
        let codeword = self
            .field
            .elements()
            .map(|x| {
                message.iter().rev().fold(0, |acc, &c| {
                    self.field.add(self.field.mul(acc, x), c)
                })
            })
            .collect();
        Ok(codeword)
    }

    /// First `count` messages in lexicographic order (least-significant
    /// symbol last): (0,..,0,0), (0,..,0,1), ...
    pub fn enumerate_messages(&self, count: usize) -> Result<Vec<Vec<u64>>> {
        let q = self.field.order() as u128;
        let available = q
            .checked_pow(self.dimension as u32)
            .unwrap_or(u128::MAX);
        if count as u128 > available {
            return Err(Error::MessageCount {
                requested: count as u128,
                available,
            });
        }
        let mut out = Vec::with_capacity(count);
        for idx in 0..count as u128 {
            let mut msg = vec![0u64; self.dimension];
            let mut rest = idx;
            for slot in (0..self.dimension).rev() {
                msg[slot] = (rest % q) as u64;
                rest /= q;
            }
            out.push(msg);
        }
        Ok(out)
    }
}

fn coeffs_string(coeffs: &[u64]) -> String {
    coeffs
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= x {
        if x.is_multiple_of(d) {
            out.push(d);
            while x.is_multiple_of(d) {
                x /= d;
            }
        }
        d += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Decomposes a supported field order into (prime, degree).
pub(crate) fn prime_power(order: u64) -> Result<(u64, u32)> {
    factor_prime_power(order)
}

fn factor_prime_power(order: u64) -> Result<(u64, u32)> {
    if order < 2 {
        return Err(Error::InvalidField(format!(
            "field order must be at least 2, got {order}"
        )));
    }
    if order > MAX_ORDER {
        return Err(Error::InvalidField(format!(
            "field order {order} exceeds the supported maximum 2^16"
        )));
    }
    let p = (2..=order).find(|&d| order.is_multiple_of(d)).unwrap();
    let mut rest = order;
    let mut degree = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        degree += 1;
    }
    if rest != 1 {
        return Err(Error::InvalidField(format!(
            "{order} is not a prime power"
        )));
    }
    Ok((p, degree))
}

// -- dense polynomials over GF(p), coefficient of x^i at index i ------------

fn elt_to_poly(a: u64, p: u64, degree: u32) -> Vec<u64> {
    let mut out = vec![0; degree as usize];
    let mut rest = a;
    for c in out.iter_mut() {
        *c = rest % p;
        rest /= p;
    }
    out
}

fn poly_to_elt(poly: &[u64], p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ca) in a.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (j, &cb) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ca * cb) % p;
        }
    }
    out
}

fn poly_degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` modulo the monic polynomial `b`.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = poly_degree(b).expect("modulus is nonzero");
    debug_assert_eq!(b[db], 1, "modulus must be monic");
    let mut rem = a.to_vec();
    while let Some(da) = poly_degree(&rem) {
        if da < db {
            break;
        }
        let lead = rem[da];
        let shift = da - db;
        for (i, &bc) in b.iter().enumerate().take(db + 1) {
            let idx = i + shift;
            rem[idx] = (rem[idx] + (p - bc % p) * lead) % p;
        }
    }
    rem.truncate(poly_degree(&rem).map_or(0, |d| d + 1));
    rem
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = match poly_degree(poly) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    for div_deg in 1..=deg / 2 {
        let combos = checked_pow(p, div_deg as u32).expect("small divisor space");
        for t in 0..combos {
            let mut divisor = elt_to_poly(t, p, div_deg as u32);
            divisor.push(1); // monic
            if poly_rem(poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Irreducible monic polynomial of the given degree with the smallest
/// coefficient encoding (non-leading coefficients read as a base-p integer).
fn default_modulus(p: u64, degree: u32) -> Vec<u64> {
    let combos = checked_pow(p, degree).expect("order bounded");
    for t in 0..combos {
        let mut candidate = elt_to_poly(t, p, degree);
        candidate.push(1);
        if is_irreducible(&candidate, p) {
            return candidate;
        }
    }
    unreachable!("irreducible polynomials exist for every degree");
}
