//! Exact arithmetic functions on nonzero integers.
//!
//! Everything downstream is built on two artifacts constructed here:
//!
//! * [`PrimeTable`] — a smallest-prime-factor sieve plus the ascending list
//!   of primes up to a limit, shared immutably by all workers;
//! * [`Factorization`] — the exact signed prime-power decomposition of a
//!   nonzero integer.
//!
//! On top of those this module provides the arithmetic functions of
//! interest: `rad(n)` (the largest squarefree divisor), `P+(n)` (the largest
//! non-composite divisor, i.e. the largest prime factor, with `P+(±1) = 1`),
//! primorials `∏_{p ≤ x} p`, the Chebyshev sum `θ(x) = Σ_{p ≤ x} ln p`,
//! insulated-ness (every prime `p ≤ P+(n)` divides `n`), and the insulator
//! `primorial(P+(n)) / rad(n)` — the smallest positive multiplier that makes
//! `n` insulated.
//!
//! Sign convention: `rad`, `P+`, insulated-ness and the insulator of a
//! negative integer are those of its absolute value. Units are degenerate
//! but well-defined: `P+(±1) = 1`, `rad(±1) = 1`, `primorial(1) = 1`,
//! `insulator(±1) = 1`, and `±1` is insulated. This keeps the identity
//! `primorial(P+(n)) = rad(n) · insulator(n)` free of special cases.

use num_bigint::{BigInt, BigUint, Sign as BigintSign};
use num_traits::One;

use crate::error::{Error, Result};

/// Smallest-prime-factor sieve up to an inclusive limit.
///
/// `spf[n]` holds the smallest prime factor of `n` for `2 ≤ n ≤ limit`, so a
/// full factorization of any `n ≤ limit` is a chain of O(log n) lookups.
/// The table is immutable after construction and safe to share across
/// threads.
///
/// Memory is `4·(limit+1)` bytes for the factor array plus the prime list;
/// `limit = 10^8` costs ≈ 430 MB and is the practical desktop ceiling. The
/// hard cap is `u32::MAX`.
pub struct PrimeTable {
    limit: u64,
    spf: Vec<u32>,
    primes: Vec<u64>,
}

impl PrimeTable {
    /// Builds the sieve with a linear-time pass.
    pub fn build(limit: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::InvalidArgument(format!(
                "prime table limit must be at least 2, got {limit}"
            )));
        }
        if limit > u32::MAX as u64 {
            return Err(Error::Resource {
                limit,
                bytes: 4 * (limit as u128 + 1),
            });
        }
        let len = limit as usize + 1;
        let mut spf: Vec<u32> = Vec::new();
        spf.try_reserve_exact(len).map_err(|_| Error::Resource {
            limit,
            bytes: 4 * len as u128,
        })?;
        spf.resize(len, 0);

        let mut primes: Vec<u64> = Vec::new();
        for i in 2..len {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u64);
            }
            let s = spf[i] as usize;
            for &p in &primes {
                let p = p as usize;
                if p > s || p * i > limit as usize {
                    break;
                }
                spf[p * i] = p as u32;
            }
        }
        Ok(PrimeTable { limit, spf, primes })
    }

    /// Inclusive sieve bound.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// All primes `≤ limit`, ascending.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// The primes `≤ x`, ascending (empty slice for `x < 2`).
    pub fn primes_upto(&self, x: u64) -> &[u64] {
        let k = self.primes.partition_point(|&p| p <= x);
        &self.primes[..k]
    }

    /// π(x): the number of primes `≤ x`. Requires `x ≤ limit`.
    pub fn prime_count_upto(&self, x: u64) -> usize {
        self.primes_upto(x).len()
    }

    /// Whether `n` is prime. Requires `n ≤ limit`.
    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n <= self.limit, "is_prime({n}) beyond table limit {}", self.limit);
        n >= 2 && self.spf[n as usize] as u64 == n
    }

    /// Smallest prime factor of `n`. Requires `2 ≤ n ≤ limit`.
    pub fn smallest_prime_factor(&self, n: u64) -> u64 {
        assert!(
            (2..=self.limit).contains(&n),
            "smallest_prime_factor({n}) outside table range"
        );
        self.spf[n as usize] as u64
    }
}

/// Sign of a nonzero integer.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Positive,
}

impl Sign {
    fn of(n: i128) -> Sign {
        if n < 0 {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    fn combine(self, other: Sign) -> Sign {
        if self == other {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

/// Exact prime-power decomposition of a nonzero integer:
/// `sign · ∏ pᵢ^eᵢ` with the primes strictly ascending and every
/// exponent ≥ 1. The factorization of `±1` has an empty factor list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    sign: Sign,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// The factorization of +1.
    pub fn one() -> Self {
        Factorization { sign: Sign::Positive, factors: Vec::new() }
    }

    /// Builds a factorization from raw parts, checking the structural
    /// invariants (ascending primes ≥ 2, exponents ≥ 1). Primality of the
    /// entries is the caller's responsibility.
    pub fn from_parts(sign: Sign, factors: Vec<(u64, u32)>) -> Result<Self> {
        let mut last = 1u64;
        for &(p, e) in &factors {
            if p < 2 || p <= last {
                return Err(Error::InvalidArgument(format!(
                    "factor list not strictly ascending at prime {p}"
                )));
            }
            if e == 0 {
                return Err(Error::InvalidArgument(format!("zero exponent at prime {p}")));
            }
            last = p;
        }
        Ok(Factorization { sign, factors })
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Prime-exponent pairs, ascending by prime.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of distinct prime factors (ω).
    pub fn distinct_prime_count(&self) -> usize {
        self.factors.len()
    }

    pub fn distinct_primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Reconstructs the exact integer `sign · ∏ p^e`.
    pub fn value(&self) -> BigInt {
        let mag = self.abs_value();
        let sign = match self.sign {
            Sign::Negative => BigintSign::Minus,
            Sign::Positive => BigintSign::Plus,
        };
        BigInt::from_biguint(sign, mag)
    }

    /// Reconstructs `|n| = ∏ p^e`.
    pub fn abs_value(&self) -> BigUint {
        let mut acc = BigUint::one();
        for &(p, e) in &self.factors {
            acc *= BigUint::from(p).pow(e);
        }
        acc
    }

    /// rad(n): the largest squarefree divisor — the product of the distinct
    /// primes. Always positive; 1 for units.
    pub fn radical(&self) -> BigUint {
        product_of_primes(&collect_primes(self))
    }

    /// P+(n): the largest non-composite divisor. This is the largest prime
    /// factor, or 1 for units.
    pub fn largest_prime(&self) -> u64 {
        self.factors.last().map_or(1, |&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Exact product of two factorizations.
    pub fn merge(&self, other: &Factorization) -> Factorization {
        let mut merged = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (pa, ea) = self.factors[i];
            let (pb, eb) = other.factors[j];
            match pa.cmp(&pb) {
                std::cmp::Ordering::Less => {
                    merged.push((pa, ea));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    merged.push((pb, eb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    merged.push((pa, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        merged.extend_from_slice(&self.factors[i..]);
        merged.extend_from_slice(&other.factors[j..]);
        Factorization { sign: self.sign.combine(other.sign), factors: merged }
    }
}

/// Canonical text form used in reports: `-2^3 * 3^2` for −72, `1`/`-1` for
/// units, `^1` omitted.
impl std::fmt::Display for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.sign == Sign::Negative {
            write!(f, "-")?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, &(p, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, " * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

fn collect_primes(f: &Factorization) -> Vec<u64> {
    f.distinct_primes().collect()
}

/// Factors a nonzero integer.
///
/// Strategy: smallest-prime-factor lookups once the remaining cofactor is
/// within the sieve; before that, trial division by the sieved primes. A
/// final cofactor `w` with `limit < w ≤ limit²` is accepted as prime —
/// trial division up to `√w` has certified it. A larger cofactor is outside
/// the supported range and produces an incomplete-factorization error
/// naming it.
pub fn factorize(n: i128, table: &PrimeTable) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    let sign = Sign::of(n);
    let mag = n.unsigned_abs();
    if mag > u64::MAX as u128 {
        return Err(Error::IncompleteFactorization {
            n,
            cofactor: u64::MAX,
            limit: table.limit,
        });
    }
    let f = factorize_u64(mag as u64, table).map_err(|e| match e {
        Error::IncompleteFactorization { cofactor, limit, .. } => {
            Error::IncompleteFactorization { n, cofactor, limit }
        }
        other => other,
    })?;
    Ok(Factorization { sign, factors: f.factors })
}

/// [`factorize`] for a positive integer given as `u64`.
pub fn factorize_u64(n: u64, table: &PrimeTable) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    let mut w = n;
    let mut factors: Vec<(u64, u32)> = Vec::new();

    if w > table.limit {
        for &p in &table.primes {
            if p.saturating_mul(p) > w {
                break;
            }
            if w % p == 0 {
                let mut e = 0u32;
                while w % p == 0 {
                    w /= p;
                    e += 1;
                }
                factors.push((p, e));
                if w <= table.limit {
                    break;
                }
            }
        }
        if w > table.limit {
            // Every prime ≤ min(limit, √w) has been tried, so a cofactor
            // within limit² is certified prime.
            if w as u128 <= table.limit as u128 * table.limit as u128 {
                factors.push((w, 1));
                w = 1;
            } else {
                return Err(Error::IncompleteFactorization {
                    n: n as i128,
                    cofactor: w,
                    limit: table.limit,
                });
            }
        }
    }

    while w > 1 {
        let p = table.spf[w as usize] as u64;
        let mut e = 0u32;
        while w % p == 0 {
            w /= p;
            e += 1;
        }
        factors.push((p, e));
    }

    Ok(Factorization { sign: Sign::Positive, factors })
}

/// Product of all primes `≤ bound`, exactly. 1 for `bound < 2`.
///
/// A real-valued bound `x` gives the same result as `floor(x)`, so callers
/// with real bounds floor first.
pub fn primorial(bound: u64, table: &PrimeTable) -> Result<BigUint> {
    if bound > table.limit {
        return Err(Error::TableTooSmall { needed: bound, limit: table.limit });
    }
    Ok(product_of_primes(table.primes_upto(bound)))
}

/// Balanced product tree; sub-quadratic where the flat left fold is not.
fn product_of_primes(primes: &[u64]) -> BigUint {
    match primes.len() {
        0 => BigUint::one(),
        1 => BigUint::from(primes[0]),
        n if n <= 16 => {
            let mut acc = BigUint::from(primes[0]);
            for &p in &primes[1..] {
                acc *= p;
            }
            acc
        }
        n => product_of_primes(&primes[..n / 2]) * product_of_primes(&primes[n / 2..]),
    }
}

/// θ(x) = Σ_{p ≤ x} ln p, accumulated over ascending primes with Kahan
/// compensation so the reported digits are reproducible run to run.
pub fn chebyshev_theta(x: f64, table: &PrimeTable) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::InvalidArgument(format!("theta bound must be finite and ≥ 0, got {x}")));
    }
    if x > table.limit as f64 {
        return Err(Error::TableTooSmall { needed: x.ceil() as u64, limit: table.limit });
    }
    let bound = x.floor() as u64;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for &p in table.primes_upto(bound) {
        let term = (p as f64).ln() - comp;
        let next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    Ok(sum)
}

/// ln(primorial(bound)) evaluated from the exact integer — the cross-check
/// path for [`chebyshev_theta`].
pub fn log_primorial(bound: u64, table: &PrimeTable) -> Result<f64> {
    Ok(ln_biguint(&primorial(bound, table)?))
}

/// Natural log of a positive big integer, accurate to a few ulp: the top 64
/// bits carry the mantissa, the rest enters as a power of two.
pub fn ln_biguint(x: &BigUint) -> f64 {
    assert!(!num_traits::Zero::is_zero(x), "ln of zero");
    let bits = x.bits();
    if bits <= 63 {
        let v: u64 = x.try_into().expect("fits in u64");
        return (v as f64).ln();
    }
    let shift = bits - 63;
    let top: u64 = (x >> shift).try_into().expect("63 bits fit in u64");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Whether `n` is insulated: every prime `p ≤ P+(n)` divides `n`.
/// Sign-blind; `±1` is insulated vacuously.
pub fn is_insulated(f: &Factorization, table: &PrimeTable) -> Result<bool> {
    let top = f.largest_prime();
    if top == 1 {
        return Ok(true);
    }
    if top > table.limit {
        return Err(Error::TableTooSmall { needed: top, limit: table.limit });
    }
    // The distinct primes of f are distinct and ≤ P+(n), so set equality
    // with {p ≤ P+(n)} reduces to a count comparison.
    let all = table.primes_upto(top);
    let insulated = all.len() == f.distinct_prime_count();
    debug_assert!(!insulated || f.distinct_primes().eq(all.iter().copied()));
    Ok(insulated)
}

/// The insulator of `n`: the smallest positive integer `m` such that `n·m`
/// is insulated. Equals `primorial(P+(n)) / rad(n)` — the product of the
/// primes `p ≤ P+(n)` that do not divide `n` — and is therefore squarefree,
/// coprime to `n`, and 1 exactly when `n` is insulated.
pub fn insulator(f: &Factorization, table: &PrimeTable) -> Result<BigUint> {
    let top = f.largest_prime();
    if top == 1 {
        return Ok(BigUint::one());
    }
    if top > table.limit {
        return Err(Error::TableTooSmall { needed: top, limit: table.limit });
    }
    let mut missing: Vec<u64> = Vec::new();
    let mut present = f.distinct_primes().peekable();
    for &p in table.primes_upto(top) {
        match present.peek() {
            Some(&q) if q == p => {
                present.next();
            }
            _ => missing.push(p),
        }
    }
    Ok(product_of_primes(&missing))
}

/// Ascending prefix products of the primes — `primorial(x)` in O(log) per
/// query. Built once per bulk run; read-only afterwards and safe to share.
///
/// A full prefix table up to `bound` holds ≈ π(bound)·θ(bound)/2 bits, so it
/// is only built up to [`PrimorialCache::DENSE_BOUND`]; rarer queries above
/// that extend the largest cached prefix on the fly.
pub struct PrimorialCache {
    /// Primes covered by the cache, ascending.
    primes: Vec<u64>,
    /// `prefix[i]` = product of the first `i` primes (`prefix[0]` = 1).
    prefix: Vec<BigUint>,
    bound: u64,
}

impl PrimorialCache {
    /// Dense prefix products are kept only this far; ≈ 60 MB of big integers.
    pub const DENSE_BOUND: u64 = 100_000;

    /// Builds prefix products covering every `primorial(x)` with `x ≤ bound`.
    pub fn build(table: &PrimeTable, bound: u64) -> Result<Self> {
        if bound > table.limit {
            return Err(Error::TableTooSmall { needed: bound, limit: table.limit });
        }
        let primes: Vec<u64> = table.primes_upto(bound).to_vec();
        let dense = primes.partition_point(|&p| p <= Self::DENSE_BOUND);
        let mut prefix = Vec::with_capacity(dense + 1);
        prefix.push(BigUint::one());
        for &p in &primes[..dense] {
            let next = prefix.last().unwrap() * p;
            prefix.push(next);
        }
        Ok(PrimorialCache { primes, prefix, bound })
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// `primorial(x)` for `x ≤ bound`.
    pub fn primorial(&self, x: u64) -> Result<BigUint> {
        Ok(self.primorial_cow(x)?.into_owned())
    }

    /// Borrowing variant: a reference into the dense prefix when available,
    /// an owned extension otherwise. The hot path for bulk consumers.
    pub fn primorial_cow(&self, x: u64) -> Result<std::borrow::Cow<'_, BigUint>> {
        use std::borrow::Cow;
        if x > self.bound {
            return Err(Error::TableTooSmall { needed: x, limit: self.bound });
        }
        let k = self.primes.partition_point(|&p| p <= x);
        if k < self.prefix.len() {
            Ok(Cow::Borrowed(&self.prefix[k]))
        } else {
            let dense = self.prefix.len() - 1;
            Ok(Cow::Owned(&self.prefix[dense] * product_of_primes(&self.primes[dense..k])))
        }
    }
}
