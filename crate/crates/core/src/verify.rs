//! Empirical checkers for the inequalities tying the measures together.
//!
//! Integer inequalities (`S ≤ min(H, N)`; `H³ ≥ N`) are checked exactly.
//! Real-valued ones (the `α·S < ln N < β·S` sandwich and the `θ(x)/x`
//! window) are evaluated in f64 with an additive slack of
//! [`STRICT_SLACK`] on strict comparisons, so float noise at a boundary
//! never flips a verdict; the slack is far below every gap that matters
//! here.
//!
//! The sandwich is an asymptotic statement, so the checker does not assert
//! it: it reports every failure in the scanned stream together with the
//! largest smoothness at which one occurs. Above that threshold the scanned
//! data satisfies the sandwich; whether failures stay confined to small
//! smoothness is exactly what the report lets one inspect.

use crate::error::{Error, Result};
use crate::enumeration::ReportRow;
use crate::primecore::PrimeTable;
use crate::triples::Triple;

/// Additive slack applied to strict float comparisons.
pub const STRICT_SLACK: f64 = 1e-12;

/// Hypothesis domain of the sandwich: `0 < α < ln 2` and `β > ln 4`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct SandwichParams {
    alpha: f64,
    beta: f64,
}

impl SandwichParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 || alpha >= std::f64::consts::LN_2 {
            return Err(Error::InvalidArgument(format!(
                "alpha must satisfy 0 < alpha < ln 2 ≈ 0.6931, got {alpha}"
            )));
        }
        if !beta.is_finite() || beta <= 2.0 * std::f64::consts::LN_2 {
            return Err(Error::InvalidArgument(format!(
                "beta must satisfy beta > ln 4 ≈ 1.3863, got {beta}"
            )));
        }
        Ok(SandwichParams { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Which side of the sandwich failed.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SandwichSide {
    /// `α·S < ln N` failed.
    Lower,
    /// `ln N < β·S` failed.
    Upper,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SandwichFailure {
    pub triple: Triple,
    pub smoothness: u64,
    pub log_conductor: f64,
    pub side: SandwichSide,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SandwichReport {
    pub alpha: f64,
    pub beta: f64,
    pub scanned: u64,
    pub failures: Vec<SandwichFailure>,
    /// Largest smoothness at which either inequality failed; `None` when
    /// the scanned stream satisfies the sandwich everywhere.
    pub failure_threshold: Option<u64>,
    pub max_smoothness_seen: u64,
}

/// Streaming sandwich checker over triples, with `n = ABC`:
/// `P+(n)` is the smoothness and `ln rad(n)` the log-conductor.
pub struct SandwichCheck {
    params: SandwichParams,
    scanned: u64,
    failures: Vec<SandwichFailure>,
    max_smoothness: u64,
}

impl SandwichCheck {
    pub fn new(params: SandwichParams) -> Self {
        SandwichCheck { params, scanned: 0, failures: Vec::new(), max_smoothness: 0 }
    }

    pub fn observe(&mut self, row: &ReportRow) {
        self.scanned += 1;
        let s = row.stats.smoothness;
        self.max_smoothness = self.max_smoothness.max(s);
        let log_n = (row.stats.conductor as f64).ln();
        let s_f = s as f64;
        // `x < y` is satisfied within slack; it fails when x ≥ y + slack.
        if self.params.alpha * s_f >= log_n + STRICT_SLACK {
            self.failures.push(SandwichFailure {
                triple: row.triple,
                smoothness: s,
                log_conductor: log_n,
                side: SandwichSide::Lower,
            });
        }
        if log_n >= self.params.beta * s_f + STRICT_SLACK {
            self.failures.push(SandwichFailure {
                triple: row.triple,
                smoothness: s,
                log_conductor: log_n,
                side: SandwichSide::Upper,
            });
        }
    }

    pub fn finish(self) -> SandwichReport {
        let threshold = self.failures.iter().map(|f| f.smoothness).max();
        SandwichReport {
            alpha: self.params.alpha,
            beta: self.params.beta,
            scanned: self.scanned,
            failures: self.failures,
            failure_threshold: threshold,
            max_smoothness_seen: self.max_smoothness,
        }
    }
}

/// Outcome of an exact (integer) inequality scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCheckReport {
    pub check: &'static str,
    pub scanned: u64,
    pub failures: Vec<Triple>,
}

impl ExactCheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `S ≤ min(H, N)`, exactly. The inequality holds for every valid triple,
/// so a failure indicates a pipeline bug — which is the point of the check.
pub struct Eq2Check {
    scanned: u64,
    failures: Vec<Triple>,
}

impl Eq2Check {
    pub fn new() -> Self {
        Eq2Check { scanned: 0, failures: Vec::new() }
    }

    pub fn observe(&mut self, row: &ReportRow) {
        self.scanned += 1;
        let s = row.stats.smoothness as u128;
        if s > row.stats.height as u128 || s > row.stats.conductor {
            self.failures.push(row.triple);
        }
    }

    pub fn finish(self) -> ExactCheckReport {
        ExactCheckReport { check: "eq2", scanned: self.scanned, failures: self.failures }
    }
}

impl Default for Eq2Check {
    fn default() -> Self {
        Self::new()
    }
}

/// `H³ ≥ N` as exact integers (`ln H ≥ ⅓ ln N`).
pub struct HeightRadCheck {
    scanned: u64,
    failures: Vec<Triple>,
}

impl HeightRadCheck {
    pub fn new() -> Self {
        HeightRadCheck { scanned: 0, failures: Vec::new() }
    }

    pub fn observe(&mut self, row: &ReportRow) {
        self.scanned += 1;
        let h = row.stats.height as u128;
        let ok = match h.checked_pow(3) {
            Some(h3) => h3 >= row.stats.conductor,
            // H³ beyond u128 dwarfs any representable conductor.
            None => true,
        };
        if !ok {
            self.failures.push(row.triple);
        }
    }

    pub fn finish(self) -> ExactCheckReport {
        ExactCheckReport { check: "heightrad", scanned: self.scanned, failures: self.failures }
    }
}

impl Default for HeightRadCheck {
    fn default() -> Self {
        Self::new()
    }
}

/// Where the `θ(x)/x` ratio settles into its window on `[1, limit]`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ThetaThresholds {
    pub limit: u64,
    /// Minimal `x₀` with `θ(x)/x > ln 2` for every integer `x ∈ [x₀, limit]`.
    pub x0_lower: u64,
    /// Minimal `x₀` with `θ(x)/x < ln 4` for every integer `x ∈ [x₀, limit]`.
    pub x0_upper: u64,
}

/// Finds both thresholds by a descending scan over integer `x`, using one
/// ascending Kahan prefix pass over `ln p` for the θ values.
pub fn theta_ratio_threshold(limit: u64, table: &PrimeTable) -> Result<ThetaThresholds> {
    if limit < 1 {
        return Err(Error::InvalidArgument("limit must be positive".into()));
    }
    if limit > table.limit() {
        return Err(Error::TableTooSmall { needed: limit, limit: table.limit() });
    }
    let primes = table.primes_upto(limit);
    let mut prefix = Vec::with_capacity(primes.len());
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for &p in primes {
        let term = (p as f64).ln() - comp;
        let next = sum + term;
        comp = (next - sum) - term;
        sum = next;
        prefix.push(sum);
    }

    let ln2 = std::f64::consts::LN_2;
    let ln4 = 2.0 * ln2;
    let mut idx = primes.len(); // number of primes ≤ current x
    let mut lower_bad: Option<u64> = None;
    let mut upper_bad: Option<u64> = None;
    for x in (1..=limit).rev() {
        while idx > 0 && primes[idx - 1] > x {
            idx -= 1;
        }
        let theta = if idx == 0 { 0.0 } else { prefix[idx - 1] };
        let xf = x as f64;
        if lower_bad.is_none() && theta <= xf * ln2 - STRICT_SLACK {
            lower_bad = Some(x);
        }
        if upper_bad.is_none() && theta >= xf * ln4 + STRICT_SLACK {
            upper_bad = Some(x);
        }
        if lower_bad.is_some() && upper_bad.is_some() {
            break;
        }
    }
    Ok(ThetaThresholds {
        limit,
        x0_lower: lower_bad.map_or(1, |x| x + 1),
        x0_upper: upper_bad.map_or(1, |x| x + 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{enumerate_by_height, HeightScanConfig};
    use crate::primecore::chebyshev_theta;
    use crate::triples::stats;

    fn table(limit: u64) -> PrimeTable {
        PrimeTable::build(limit).unwrap()
    }

    fn row(a: u64, b: u64, t: &PrimeTable) -> ReportRow {
        let triple = Triple::new(a, b).unwrap();
        let stats = stats(&triple, t).unwrap();
        ReportRow { triple, stats }
    }

    #[test]
    fn sandwich_params_enforce_hypothesis() {
        assert!(SandwichParams::new(0.6, 1.5).is_ok());
        assert!(SandwichParams::new(std::f64::consts::LN_2, 1.5).is_err()); // α = ln 2 excluded
        assert!(SandwichParams::new(0.0, 1.5).is_err());
        assert!(SandwichParams::new(-0.1, 1.5).is_err());
        assert!(SandwichParams::new(0.6, 2.0 * std::f64::consts::LN_2).is_err()); // β = ln 4 excluded
        assert!(SandwichParams::new(0.6, 1.0).is_err());
    }

    #[test]
    fn sandwich_flags_small_smoothness_failure() {
        // (1,1): ln rad(-2) = ln 2 ≈ 0.693; lower bound 0.6·2 = 1.2 fails.
        let t = table(100);
        let mut check = SandwichCheck::new(SandwichParams::new(0.6, 1.5).unwrap());
        check.observe(&row(1, 1, &t));
        let report = check.finish();
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.failures[0].side, SandwichSide::Lower);
        assert_eq!(report.failures[0].smoothness, 2);
        assert_eq!(report.failure_threshold, Some(2));
    }

    #[test]
    fn sandwich_on_insulated_stream_fails_only_at_small_smoothness() {
        // Triples with insulator 1 have ln N = θ(S); failures of the lower
        // bound at α = 0.6 can only live where θ(S) ≤ 0.6·S.
        let t = table(2000);
        let mut check = SandwichCheck::new(SandwichParams::new(0.6, 1.5).unwrap());
        enumerate_by_height(&HeightScanConfig::new(2000).unwrap(), &t, |r| {
            if num_traits::One::is_one(&r.stats.insulator) {
                check.observe(r);
            }
            Ok(())
        })
        .unwrap();
        let report = check.finish();
        assert!(report.scanned > 0);
        assert!(report.failures.iter().all(|f| f.side == SandwichSide::Lower));
        // θ(5) ≈ 3.4 > 3 = 0.6·5, so failures sit at S ∈ {2, 3} only.
        assert_eq!(report.failure_threshold, Some(3));
        assert!(report.max_smoothness_seen > 3);
    }

    #[test]
    fn exact_checks_pass_on_scan() {
        let t = table(500);
        let mut eq2 = Eq2Check::new();
        let mut hr = HeightRadCheck::new();
        enumerate_by_height(&HeightScanConfig::new(500).unwrap(), &t, |r| {
            eq2.observe(r);
            hr.observe(r);
            Ok(())
        })
        .unwrap();
        let (eq2, hr) = (eq2.finish(), hr.finish());
        assert!(eq2.passed() && eq2.scanned > 0);
        assert!(hr.passed());
        assert_eq!(eq2.scanned, hr.scanned);
    }

    #[test]
    fn exact_checks_on_known_rows() {
        let t = table(100);
        let mut eq2 = Eq2Check::new();
        let mut hr = HeightRadCheck::new();
        for (a, b) in [(1, 8), (1, 1), (1, 4)] {
            eq2.observe(&row(a, b, &t));
            hr.observe(&row(a, b, &t));
        }
        assert!(eq2.finish().passed());
        assert!(hr.finish().passed());
    }

    #[test]
    fn theta_thresholds_at_small_limit() {
        let t = table(1000);
        let th = theta_ratio_threshold(1000, &t).unwrap();
        // Ascending full-scan oracle.
        let ln2 = std::f64::consts::LN_2;
        let ln4 = 2.0 * ln2;
        let mut lower_bad = 0u64;
        let mut upper_bad = 0u64;
        for x in 1..=1000u64 {
            let theta = chebyshev_theta(x as f64, &t).unwrap();
            if theta <= x as f64 * ln2 - STRICT_SLACK {
                lower_bad = x;
            }
            if theta >= x as f64 * ln4 + STRICT_SLACK {
                upper_bad = x;
            }
        }
        assert_eq!(th.x0_lower, lower_bad + 1);
        assert_eq!(th.x0_upper, if upper_bad == 0 { 1 } else { upper_bad + 1 });
        assert_eq!(th.x0_upper, 1); // θ(x) < x·ln 4 throughout
        // θ(11)/11 > ln 2 while θ(12)/12 < ln 2: the threshold is above 12.
        let t11 = chebyshev_theta(11.0, &t).unwrap();
        let t12 = chebyshev_theta(12.0, &t).unwrap();
        assert!(t11 / 11.0 > ln2);
        assert!(t12 / 12.0 < ln2);
        assert!(th.x0_lower > 12);
    }

    #[test]
    fn theta_threshold_monotone_in_limit() {
        let t = table(100_000);
        let mut last = 0;
        for limit in [100u64, 1000, 10_000, 100_000] {
            let th = theta_ratio_threshold(limit, &t).unwrap();
            assert!(th.x0_lower >= last, "x0_lower not monotone at {limit}");
            last = th.x0_lower;
        }
    }

    #[test]
    fn theta_threshold_validates_range() {
        let t = table(100);
        assert!(theta_ratio_threshold(0, &t).is_err());
        assert!(theta_ratio_threshold(101, &t).is_err());
    }
}
