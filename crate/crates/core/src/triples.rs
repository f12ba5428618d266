//! Canonical triples and their per-triple measures.
//!
//! Every primitive non-cuspidal solution of `A + B + C = 0` has, up to
//! permutations and a global sign (a group of order 12), a unique
//! representative with two positive entries: `(a, b, -(a+b))` with
//! `0 < a ≤ b` and `gcd(a, b) = 1`. [`Triple`] stores that representative;
//! [`canonicalize`] reduces an arbitrary solution to it and reports the
//! orbit size (12, or 6 for the self-symmetric `(1, 1, -2)`) so ordered
//! counts stay recoverable.
//!
//! The measures are symmetric under the full group, so nothing is lost:
//! height `H = a + b`, conductor `N = rad(ABC)`, smoothness `S = P+(ABC)`,
//! insulator `I = primorial(S)/N`. The scalar merit functionals are derived
//! instrumentation: `quality = ln H / ln N`, `merit = ln H / S^(2/3)`,
//! `ratio = ln H / S`, all with natural logs in f64; inequalities between
//! integer quantities are always compared exactly, never through floats.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::primecore::{factorize_u64, insulator, Factorization, PrimeTable, PrimorialCache};

/// Canonical primitive non-cuspidal solution `(a, b, -(a+b))`,
/// `0 < a ≤ b`, `gcd(a, b) = 1`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    a: u64,
    b: u64,
}

/// Orbit metadata from [`canonicalize`]: how many ordered solutions map to
/// the canonical representative under permutations × global sign.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct OrbitInfo {
    pub size: u32,
}

impl Triple {
    /// Builds the canonical triple `(a, b, -(a+b))` directly.
    pub fn new(a: u64, b: u64) -> Result<Triple> {
        if a == 0 {
            return Err(Error::InvalidTriple("entries must be nonzero".into()));
        }
        if a > b {
            return Err(Error::InvalidTriple(format!("canonical form needs a ≤ b, got ({a}, {b})")));
        }
        if a.checked_add(b).is_none() {
            return Err(Error::InvalidTriple(format!("a + b overflows u64: ({a}, {b})")));
        }
        if a.gcd(&b) != 1 {
            return Err(Error::InvalidTriple(format!("gcd({a}, {b}) = {} ≠ 1", a.gcd(&b))));
        }
        Ok(Triple { a, b })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// The negative entry `C = -(a+b)`.
    pub fn c(&self) -> i128 {
        -((self.a as i128) + (self.b as i128))
    }

    /// `H = max(|A|,|B|,|C|) = a + b`.
    pub fn height(&self) -> u64 {
        self.a + self.b
    }

    /// Size of the signed-permutation orbit: 6 for `(1,1,-2)`, else 12.
    pub fn orbit_size(&self) -> u32 {
        if self.a == self.b {
            6
        } else {
            12
        }
    }

    /// The ordered representative `(a, b, -(a+b))`.
    pub fn components(&self) -> (i128, i128, i128) {
        (self.a as i128, self.b as i128, self.c())
    }
}

impl std::fmt::Display for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c())
    }
}

/// Reduces an arbitrary primitive non-cuspidal solution to its canonical
/// representative, validating the preconditions.
///
/// Two solutions determine the same ratio pair `(-A/C, -B/C)` — the view in
/// which `A + B + C = 0` becomes `x + y = 1` over the rationals — exactly
/// when they differ by a global sign, and the measures are furthermore
/// blind to coordinate order; the canonical form quotients by both at once.
pub fn canonicalize(a: i128, b: i128, c: i128) -> Result<(Triple, OrbitInfo)> {
    if a == 0 || b == 0 || c == 0 {
        return Err(Error::InvalidTriple("cuspidal: a zero entry".into()));
    }
    let sum = a
        .checked_add(b)
        .and_then(|s| s.checked_add(c))
        .ok_or_else(|| Error::InvalidTriple("entry sum overflows".into()))?;
    if sum != 0 {
        return Err(Error::InvalidTriple(format!("sum is {sum}, not 0")));
    }
    let g = a.unsigned_abs().gcd(&b.unsigned_abs()).gcd(&c.unsigned_abs());
    if g != 1 {
        return Err(Error::InvalidTriple(format!("common divisor {g} ≠ 1")));
    }

    // Exactly one or two entries are positive; flip the global sign to get two.
    let mut entries = [a, b, c];
    let positives = entries.iter().filter(|&&x| x > 0).count();
    if positives == 1 {
        for x in &mut entries {
            *x = -*x;
        }
    }
    let mut pos: Vec<u64> = entries
        .iter()
        .filter(|&&x| x > 0)
        .map(|&x| u64::try_from(x).map_err(|_| Error::InvalidTriple(format!("entry {x} too large"))))
        .collect::<Result<_>>()?;
    pos.sort_unstable();
    debug_assert_eq!(pos.len(), 2);
    let t = Triple::new(pos[0], pos[1])?;
    Ok((t, OrbitInfo { size: t.orbit_size() }))
}

/// The measured quantities of one triple.
#[derive(Clone, Debug, PartialEq)]
pub struct TripleStats {
    /// `H = a + b`.
    pub height: u64,
    /// `N = rad(ABC)`, exact.
    pub conductor: u128,
    /// `S = P+(ABC)`; at least 2 since `2 | ABC` for every valid triple.
    pub smoothness: u64,
    /// `I = primorial(S) / N`, exact and of unbounded size.
    pub insulator: BigUint,
    /// `ln H / ln N`.
    pub abc_quality: f64,
    /// `ln H / S^(2/3)`.
    pub xyz_merit: f64,
    /// `ln H / S`.
    pub weak_ratio: f64,
}

/// `ln H / ln N`. `N ≥ 2` for every valid triple, so the ratio is finite.
pub fn abc_quality(height: u64, conductor: u128) -> f64 {
    (height as f64).ln() / (conductor as f64).ln()
}

/// `ln H / S^(2/3)`.
pub fn xyz_merit(height: u64, smoothness: u64) -> f64 {
    (height as f64).ln() / (smoothness as f64).cbrt().powi(2)
}

/// `ln H / S`.
pub fn weak_xyz_ratio(height: u64, smoothness: u64) -> f64 {
    (height as f64).ln() / smoothness as f64
}

/// The exact factorization of `ABC` (sign dropped; the measures are
/// sign-blind).
fn merged_abc(t: &Triple, table: &PrimeTable) -> Result<Factorization> {
    let fa = factorize_u64(t.a(), table)?;
    let fb = factorize_u64(t.b(), table)?;
    let fh = factorize_u64(t.height(), table)?;
    Ok(fa.merge(&fb).merge(&fh))
}

fn conductor_u128(f: &Factorization) -> Result<u128> {
    let mut n: u128 = 1;
    for p in f.distinct_primes() {
        n = n
            .checked_mul(p as u128)
            .ok_or_else(|| Error::Overflow("conductor exceeds u128".into()))?;
    }
    Ok(n)
}

fn stats_from_parts(t: &Triple, merged: &Factorization, ins: BigUint) -> Result<TripleStats> {
    let height = t.height();
    let conductor = conductor_u128(merged)?;
    let smoothness = merged.largest_prime();
    debug_assert!(smoothness >= 2, "2 divides ABC for every valid triple");
    Ok(TripleStats {
        height,
        conductor,
        smoothness,
        insulator: ins,
        abc_quality: abc_quality(height, conductor),
        xyz_merit: xyz_merit(height, smoothness),
        weak_ratio: weak_xyz_ratio(height, smoothness),
    })
}

/// Computes all measures of one triple. The insulator is assembled directly
/// as the product of the primes `p ≤ S` missing from `ABC`.
pub fn stats(t: &Triple, table: &PrimeTable) -> Result<TripleStats> {
    let merged = merged_abc(t, table)?;
    let ins = insulator(&merged, table)?;
    stats_from_parts(t, &merged, ins)
}

/// Bulk evaluator: shares a [`PrimorialCache`] so each triple costs one
/// exact division `primorial(S) / N` instead of a fresh prime product.
pub struct StatsContext<'t> {
    table: &'t PrimeTable,
    primorials: PrimorialCache,
}

impl<'t> StatsContext<'t> {
    /// `smoothness_bound` must be ≥ the largest smoothness that will occur
    /// (any bound on the heights works, since `S ≤ H`).
    pub fn new(table: &'t PrimeTable, smoothness_bound: u64) -> Result<Self> {
        Ok(StatsContext {
            table,
            primorials: PrimorialCache::build(table, smoothness_bound)?,
        })
    }

    pub fn table(&self) -> &PrimeTable {
        self.table
    }

    pub fn stats(&self, t: &Triple) -> Result<TripleStats> {
        let merged = merged_abc(t, self.table)?;
        let conductor = conductor_u128(&merged)?;
        let smoothness = merged.largest_prime();
        let (ins, rem) = self
            .primorials
            .primorial_cow(smoothness)?
            .div_rem(&BigUint::from(conductor));
        assert!(
            rem.is_zero(),
            "conductor {conductor} does not divide primorial({smoothness}): factorization bug"
        );
        stats_from_parts(t, &merged, ins)
    }
}

/// The family `(2^k (2^k - 2), 1, -(2^k - 1)^2)`, valid for `k ≥ 2`,
/// whose height `(2^k - 1)^2` strictly exceeds its conductor — the witness
/// that quality bounds need their ε.
pub fn mersenne_family(k: u32) -> Result<Triple> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "family index must be ≥ 2 (k = 1 has a zero entry), got {k}"
        )));
    }
    let pow = 1u64
        .checked_shl(k)
        .filter(|_| k < 32)
        .ok_or_else(|| Error::InvalidArgument(format!("family index {k} overflows u64")))?;
    let a = 1u64;
    let b = pow * (pow - 2);
    let t = Triple::new(a, b)?;
    debug_assert_eq!(t.height(), (pow - 1) * (pow - 1));
    Ok(t)
}
