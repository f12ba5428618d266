//! Exhaustive, bound-certified generation of triple sets.
//!
//! The workhorse is the height scan: in canonical form the height is
//! `h = a + b`, so iterating `h` ascending and `a ≤ h/2` with
//! `gcd(a, h) = 1` visits every canonical triple below a height bound
//! exactly once — completeness holds by construction, no dedup needed.
//! The scan is partitioned into contiguous `h`-chunks; workers fill chunks
//! independently and a single reducer drains them in order, so output is
//! byte-for-byte identical for any worker count.
//!
//! Smoothness-bounded enumeration builds the P-smooth numbers by exponent-
//! vector products (not sieve filtering) and scans smooth heights only. The
//! full smoothness-bounded set is finite, but certifying exhaustion is far
//! beyond a desk tool, so those results carry an explicit height cap in
//! their summary ([`SmoothnessSummary::cap_limited`] is always true).

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::primecore::{factorize_u64, PrimeTable};
use crate::triples::{StatsContext, Triple, TripleStats};

/// One enumerated triple with its measures. The row type every stream,
/// record table, and report renderer shares.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub triple: Triple,
    pub stats: TripleStats,
}

/// Bounds and partitioning for a height scan.
#[derive(Clone, Debug)]
pub struct HeightScanConfig {
    height_bound: u64,
    chunk: u64,
    threads: usize,
}

impl HeightScanConfig {
    /// Scan every canonical triple with `a + b < height_bound`.
    /// Requires `height_bound ≥ 3` (the smallest triple has height 2).
    pub fn new(height_bound: u64) -> Result<Self> {
        if height_bound < 3 {
            return Err(Error::InvalidArgument(format!(
                "height bound must be ≥ 3 for a nonempty scan, got {height_bound}"
            )));
        }
        // Keep chunks around 2^14 triples (a chunk of w heights near h holds
        // roughly w·h/4 triples) so in-flight memory stays bounded.
        let chunk = (1u64 << 16).div_euclid(height_bound).clamp(1, 4096);
        Ok(HeightScanConfig { height_bound, chunk, threads: 1 })
    }

    /// Overrides the `h`-range width of one work chunk (must be ≥ 1).
    /// Chunking never affects output order or content.
    pub fn with_chunk(mut self, chunk: u64) -> Result<Self> {
        if chunk == 0 {
            return Err(Error::InvalidArgument("chunk width must be positive".into()));
        }
        self.chunk = chunk;
        Ok(self)
    }

    /// Worker count; 1 runs fully inline.
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn height_bound(&self) -> u64 {
        self.height_bound
    }

    pub fn chunk(&self) -> u64 {
        self.chunk
    }

    pub fn threads(&self) -> usize {
        self.threads
    }
}

/// Tally of one completed height scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationSummary {
    pub height_bound: u64,
    /// Canonical triples emitted.
    pub canonical_count: u64,
    /// Ordered solutions those represent (orbit sizes summed).
    pub ordered_count: u64,
}

fn rows_for_height(h: u64, ctx: &StatsContext<'_>, out: &mut Vec<ReportRow>) -> Result<()> {
    for a in 1..=h / 2 {
        if a.gcd(&h) != 1 {
            continue;
        }
        let triple = Triple::new(a, h - a).expect("scan candidates are canonical");
        let stats = ctx.stats(&triple)?;
        out.push(ReportRow { triple, stats });
    }
    Ok(())
}

fn rows_for_range(range: std::ops::Range<u64>, ctx: &StatsContext<'_>) -> Result<Vec<ReportRow>> {
    let mut out = Vec::new();
    for h in range {
        rows_for_height(h, ctx, &mut out)?;
    }
    Ok(out)
}

/// Streams every canonical triple with `H < cfg.height_bound` into `sink`,
/// ordered lexicographically by `(a + b, a)`. Output is identical for any
/// thread or chunk configuration.
///
/// Requires `table.limit ≥ cfg.height_bound` so that `a`, `b`, and `a + b`
/// all factor by direct sieve lookup.
pub fn enumerate_by_height<F>(
    cfg: &HeightScanConfig,
    table: &PrimeTable,
    mut sink: F,
) -> Result<EnumerationSummary>
where
    F: FnMut(&ReportRow) -> Result<()>,
{
    if table.limit() < cfg.height_bound {
        return Err(Error::TableTooSmall { needed: cfg.height_bound, limit: table.limit() });
    }
    let ctx = StatsContext::new(table, cfg.height_bound)?;
    let mut summary = EnumerationSummary {
        height_bound: cfg.height_bound,
        canonical_count: 0,
        ordered_count: 0,
    };
    let mut drain = |rows: Vec<ReportRow>, sink: &mut F| -> Result<()> {
        for row in &rows {
            summary.canonical_count += 1;
            summary.ordered_count += row.triple.orbit_size() as u64;
            sink(row)?;
        }
        Ok(())
    };

    if cfg.threads <= 1 {
        let mut buf = Vec::new();
        for h in 2..cfg.height_bound {
            rows_for_height(h, &ctx, &mut buf)?;
            drain(std::mem::take(&mut buf), &mut sink)?;
        }
        return Ok(summary);
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot build worker pool: {e}")))?;

    let mut chunks = Vec::new();
    let mut start = 2u64;
    while start < cfg.height_bound {
        let end = start.saturating_add(cfg.chunk).min(cfg.height_bound);
        chunks.push(start..end);
        start = end;
    }

    // Waves of chunks: parallel fill, ordered drain, bounded memory.
    let wave = cfg.threads * 2;
    for batch in chunks.chunks(wave) {
        let results: Vec<Result<Vec<ReportRow>>> = pool.install(|| {
            use rayon::prelude::*;
            batch.par_iter().map(|r| rows_for_range(r.clone(), &ctx)).collect()
        });
        for rows in results {
            drain(rows?, &mut sink)?;
        }
    }
    Ok(summary)
}

/// All P-smooth integers in `[1, limit]`, ascending, generated by bounded
/// exponent-vector products over the primes `≤ smooth_bound` (no sieve
/// filtering, so `limit` may exceed comfortable sieve sizes).
pub fn generate_smooth_numbers(
    smooth_bound: u64,
    limit: u64,
    table: &PrimeTable,
) -> Result<Vec<u64>> {
    if smooth_bound > table.limit() {
        return Err(Error::TableTooSmall { needed: smooth_bound, limit: table.limit() });
    }
    if !table.is_prime(smooth_bound) {
        return Err(Error::InvalidArgument(format!(
            "smoothness bound must be prime, got {smooth_bound}"
        )));
    }
    if limit == 0 {
        return Err(Error::InvalidArgument("limit must be positive".into()));
    }
    // Grow the set one prime at a time: every p-free value already present
    // spawns its multiples by powers of p. Each smooth number is built
    // exactly once, in prime order of its factorization.
    let mut out = vec![1u64];
    for &p in table.primes_upto(smooth_bound) {
        let existing = out.len();
        for i in 0..existing {
            let mut v = out[i];
            while v <= limit / p {
                v *= p;
                out.push(v);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Tally of a smoothness-bounded enumeration. `cap_limited` is always true:
/// the set is complete below `height_cap` but the scan does not certify that
/// the full smoothness-bounded set is exhausted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessSummary {
    pub smooth_bound: u64,
    pub height_cap: u64,
    pub canonical_count: u64,
    pub ordered_count: u64,
    pub cap_limited: bool,
}

/// Streams every canonical triple with `S ≤ smooth_bound` and
/// `H ≤ height_cap`, ordered by `(a + b, a)`: for each smooth height `h`,
/// each smooth `a ≤ h/2` with `h - a` smooth and `gcd(a, h) = 1` is a hit.
pub fn enumerate_by_smoothness<F>(
    smooth_bound: u64,
    height_cap: u64,
    table: &PrimeTable,
    mut sink: F,
) -> Result<SmoothnessSummary>
where
    F: FnMut(&ReportRow) -> Result<()>,
{
    let smooth = generate_smooth_numbers(smooth_bound, height_cap, table)?;
    let members: HashSet<u64> = smooth.iter().copied().collect();
    let ctx = StatsContext::new(table, smooth_bound)?;
    let mut summary = SmoothnessSummary {
        smooth_bound,
        height_cap,
        canonical_count: 0,
        ordered_count: 0,
        cap_limited: true,
    };
    for &h in smooth.iter().skip_while(|&&h| h < 2) {
        for &a in smooth.iter().take_while(|&&a| a <= h / 2) {
            let b = h - a;
            if !members.contains(&b) || a.gcd(&h) != 1 {
                continue;
            }
            let triple = Triple::new(a, b).expect("smooth candidates are canonical");
            let stats = ctx.stats(&triple)?;
            debug_assert!(stats.smoothness <= smooth_bound);
            summary.canonical_count += 1;
            summary.ordered_count += triple.orbit_size() as u64;
            sink(&ReportRow { triple, stats })?;
        }
    }
    Ok(summary)
}

/// All canonical triples with `H ≤ height_cap` whose insulator equals
/// `target`, by height scan plus filter.
///
/// Fast paths: an attainable insulator is odd (2 divides every `ABC`) and
/// squarefree, so such targets return empty without scanning. The
/// squarefree test runs only when `target` is small enough to factor.
pub fn find_by_insulator(
    target: &BigUint,
    height_cap: u64,
    table: &PrimeTable,
) -> Result<Vec<ReportRow>> {
    if target.is_zero() {
        return Err(Error::InvalidArgument("insulator target must be positive".into()));
    }
    if target.is_even() {
        return Ok(Vec::new());
    }
    if let Some(v) = target.to_u64() {
        if v > 1 {
            if let Ok(f) = factorize_u64(v, table) {
                if !f.is_squarefree() {
                    return Ok(Vec::new());
                }
            }
        }
    }
    let cfg = HeightScanConfig::new(height_cap.saturating_add(1))?;
    let mut hits = Vec::new();
    enumerate_by_height(&cfg, table, |row| {
        if row.stats.insulator == *target {
            hits.push(row.clone());
        }
        Ok(())
    })?;
    Ok(hits)
}

/// Distribution of insulator values over a height-bounded scan.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub height_bound: u64,
    /// Canonical triples scanned (equals the sum of bucket counts).
    pub total: u64,
    pub buckets: BTreeMap<BigUint, SpectrumBucket>,
}

/// One insulator value's bucket.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumBucket {
    pub count: u64,
    /// Smallest height attaining this insulator value.
    pub min_height: u64,
    /// The first (in scan order) triple at that minimal height.
    pub example: Triple,
}

/// Aggregates the height scan below `height_bound` into a [`Spectrum`].
pub fn insulator_spectrum(height_bound: u64, table: &PrimeTable) -> Result<Spectrum> {
    let cfg = HeightScanConfig::new(height_bound)?;
    let mut buckets: BTreeMap<BigUint, SpectrumBucket> = BTreeMap::new();
    let summary = enumerate_by_height(&cfg, table, |row| {
        buckets
            .entry(row.stats.insulator.clone())
            .and_modify(|b| b.count += 1)
            .or_insert_with(|| SpectrumBucket {
                count: 1,
                // Scan order is height-ascending, so first sighting is minimal.
                min_height: row.stats.height,
                example: row.triple,
            });
        Ok(())
    })?;
    Ok(Spectrum { height_bound, total: summary.canonical_count, buckets })
}

/// Merit orderings for record tables.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Merit {
    /// `ln H / ln N`, higher is better.
    Quality,
    /// `ln H / S^(2/3)`, higher is better.
    Xyz,
    /// `ln H / S`, higher is better.
    Ratio,
    /// Insulator value, lower is better.
    InsulatorMin,
}

impl Merit {
    pub fn name(&self) -> &'static str {
        match self {
            Merit::Quality => "quality",
            Merit::Xyz => "xyz",
            Merit::Ratio => "ratio",
            Merit::InsulatorMin => "insulator-min",
        }
    }
}

/// Streaming record filter: keeps rows that strictly improve on every
/// earlier row's merit. The first row offered is always a record.
pub struct RecordTracker {
    merit: Merit,
    best_float: f64,
    best_insulator: Option<BigUint>,
}

impl RecordTracker {
    pub fn new(merit: Merit) -> Self {
        RecordTracker { merit, best_float: f64::NEG_INFINITY, best_insulator: None }
    }

    /// Whether `row` sets a new record (and becomes the bar to beat).
    pub fn offer(&mut self, row: &ReportRow) -> bool {
        match self.merit {
            Merit::InsulatorMin => {
                let better = self
                    .best_insulator
                    .as_ref()
                    .is_none_or(|best| row.stats.insulator < *best);
                if better {
                    self.best_insulator = Some(row.stats.insulator.clone());
                }
                better
            }
            _ => {
                let value = match self.merit {
                    Merit::Quality => row.stats.abc_quality,
                    Merit::Xyz => row.stats.xyz_merit,
                    Merit::Ratio => row.stats.weak_ratio,
                    Merit::InsulatorMin => unreachable!(),
                };
                let better = value > self.best_float;
                if better {
                    self.best_float = value;
                }
                better
            }
        }
    }
}

/// Record table of the height scan below `height_bound` in scan order.
pub fn records_by_height(
    height_bound: u64,
    merit: Merit,
    table: &PrimeTable,
) -> Result<Vec<ReportRow>> {
    let cfg = HeightScanConfig::new(height_bound)?;
    let mut tracker = RecordTracker::new(merit);
    let mut rows = Vec::new();
    enumerate_by_height(&cfg, table, |row| {
        if tracker.offer(row) {
            rows.push(row.clone());
        }
        Ok(())
    })?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn table(limit: u64) -> PrimeTable {
        PrimeTable::build(limit).unwrap()
    }

    fn collect_triples(cfg: &HeightScanConfig, t: &PrimeTable) -> Vec<ReportRow> {
        let mut rows = Vec::new();
        enumerate_by_height(cfg, t, |r| {
            rows.push(r.clone());
            Ok(())
        })
        .unwrap();
        rows
    }

    #[test]
    fn height_scan_smallest_bounds() {
        let t = table(100);
        let rows = collect_triples(&HeightScanConfig::new(3).unwrap(), &t);
        assert_eq!(rows.len(), 1);
        assert_eq!((rows[0].triple.a(), rows[0].triple.b()), (1, 1));

        let rows = collect_triples(&HeightScanConfig::new(6).unwrap(), &t);
        let pairs: Vec<(u64, u64)> = rows.iter().map(|r| (r.triple.a(), r.triple.b())).collect();
        assert_eq!(pairs, vec![(1, 1), (1, 2), (1, 3), (1, 4), (2, 3)]);
    }

    #[test]
    fn height_scan_rejects_small_bound_or_table() {
        assert!(HeightScanConfig::new(2).is_err());
        let t = table(50);
        let cfg = HeightScanConfig::new(100).unwrap();
        assert!(matches!(
            enumerate_by_height(&cfg, &t, |_| Ok(())),
            Err(Error::TableTooSmall { needed: 100, limit: 50 })
        ));
    }

    /// Naive all-pairs oracle over ordered tuples, no sieve involved.
    fn oracle_canonical_set(bound: u64) -> std::collections::BTreeSet<(u64, u64)> {
        let mut set = std::collections::BTreeSet::new();
        let m = bound as i128;
        for a in -m..=m {
            for b in -m..=m {
                let c = -a - b;
                if a == 0 || b == 0 || c == 0 {
                    continue;
                }
                if a.abs().max(b.abs()).max(c.abs()) >= m {
                    continue;
                }
                let g = crate::triples::canonicalize(a, b, c);
                match g {
                    Ok((t, _)) => {
                        set.insert((t.a(), t.b()));
                    }
                    Err(_) => continue, // gcd > 1
                }
            }
        }
        set
    }

    #[test]
    fn height_scan_matches_naive_oracle() {
        let t = table(200);
        for bound in [3u64, 10, 50, 120] {
            let rows = collect_triples(&HeightScanConfig::new(bound).unwrap(), &t);
            let got: std::collections::BTreeSet<(u64, u64)> =
                rows.iter().map(|r| (r.triple.a(), r.triple.b())).collect();
            assert_eq!(got.len(), rows.len(), "no duplicates at bound {bound}");
            assert_eq!(got, oracle_canonical_set(bound), "bound {bound}");
        }
    }

    #[test]
    fn height_scan_deterministic_across_threads_and_chunks() {
        let t = table(400);
        let base = collect_triples(&HeightScanConfig::new(400).unwrap(), &t);
        for (threads, chunk) in [(2, 1), (4, 7), (8, 64), (3, 1000)] {
            let cfg = HeightScanConfig::new(400)
                .unwrap()
                .with_threads(threads)
                .with_chunk(chunk)
                .unwrap();
            assert_eq!(collect_triples(&cfg, &t), base, "threads={threads} chunk={chunk}");
        }
    }

    #[test]
    fn summary_counts_orbits() {
        let t = table(100);
        let mut n = 0u64;
        let summary =
            enumerate_by_height(&HeightScanConfig::new(4).unwrap(), &t, |_| {
                n += 1;
                Ok(())
            })
            .unwrap();
        // (1,1) orbit 6, (1,2) orbit 12.
        assert_eq!(n, 2);
        assert_eq!(summary.canonical_count, 2);
        assert_eq!(summary.ordered_count, 18);
    }

    #[test]
    fn smooth_numbers_small_cases() {
        let t = table(100);
        assert_eq!(generate_smooth_numbers(2, 10, &t).unwrap(), vec![1, 2, 4, 8]);
        assert_eq!(
            generate_smooth_numbers(3, 20, &t).unwrap(),
            vec![1, 2, 3, 4, 6, 8, 9, 12, 16, 18]
        );
        assert!(generate_smooth_numbers(4, 10, &t).is_err()); // not prime
        assert!(generate_smooth_numbers(101, 10, &t).is_err()); // beyond table
    }

    /// Filter oracle: trial-divide every integer in range and compare the
    /// largest prime factor against the bound.
    fn oracle_smooth(bound: u64, limit: u64) -> Vec<u64> {
        (1..=limit)
            .filter(|&n| {
                let mut w = n;
                let mut max_factor = 1;
                let mut d = 2;
                while d * d <= w {
                    if w % d == 0 {
                        max_factor = d;
                        while w % d == 0 {
                            w /= d;
                        }
                    }
                    d += 1;
                }
                if w > 1 {
                    max_factor = max_factor.max(w);
                }
                max_factor <= bound
            })
            .collect()
    }

    #[test]
    fn smooth_numbers_match_filter_oracle() {
        let t = table(100);
        for bound in [2u64, 3, 5, 7, 13] {
            assert_eq!(
                generate_smooth_numbers(bound, 10_000, &t).unwrap(),
                oracle_smooth(bound, 10_000),
                "bound {bound}"
            );
        }
    }

    #[test]
    fn smooth_generation_beyond_sieve_limit() {
        // limit exceeds the sieve: product construction must not care.
        let t = table(100);
        let xs = generate_smooth_numbers(2, 1_000_000, &t).unwrap();
        assert_eq!(xs.len(), 20); // 2^0..2^19
        assert_eq!(*xs.last().unwrap(), 524_288);
    }

    #[test]
    fn smoothness_scan_p2_is_one_triple() {
        let t = table(1000);
        let mut rows = Vec::new();
        let summary = enumerate_by_smoothness(2, 1000, &t, |r| {
            rows.push(r.clone());
            Ok(())
        })
        .unwrap();
        assert!(summary.cap_limited);
        assert_eq!(rows.len(), 1);
        assert_eq!((rows[0].triple.a(), rows[0].triple.b()), (1, 1));
    }

    #[test]
    fn smoothness_scan_matches_filtered_height_scan() {
        let t = table(1001);
        for p in [2u64, 3, 5, 7, 13] {
            let mut from_smooth = Vec::new();
            enumerate_by_smoothness(p, 1000, &t, |r| {
                from_smooth.push(r.clone());
                Ok(())
            })
            .unwrap();
            let filtered: Vec<ReportRow> =
                collect_triples(&HeightScanConfig::new(1001).unwrap(), &t)
                    .into_iter()
                    .filter(|r| r.stats.smoothness <= p)
                    .collect();
            assert_eq!(from_smooth, filtered, "P = {p}");
        }
    }

    #[test]
    fn find_by_insulator_small_cases() {
        let t = table(200);
        let hits = find_by_insulator(&BigUint::one(), 10, &t).unwrap();
        let pairs: Vec<(u64, u64)> = hits.iter().map(|r| (r.triple.a(), r.triple.b())).collect();
        for expected in [(1, 1), (1, 2), (2, 3), (1, 5)] {
            assert!(pairs.contains(&expected), "missing {expected:?}");
        }
        // Every hit must genuinely have insulator 1 = conductor is a primorial.
        for r in &hits {
            assert!(r.stats.insulator.is_one());
        }

        let three = find_by_insulator(&BigUint::from(3u32), 100, &t).unwrap();
        assert!(three.iter().any(|r| (r.triple.a(), r.triple.b()) == (1, 4)));
    }

    #[test]
    fn find_by_insulator_fast_paths() {
        let t = table(1000);
        // Even targets are unattainable: 2 | ABC always.
        assert!(find_by_insulator(&BigUint::from(2u32), 1000, &t).unwrap().is_empty());
        // Non-squarefree targets are unattainable.
        assert!(find_by_insulator(&BigUint::from(9u32), 1000, &t).unwrap().is_empty());
        assert!(find_by_insulator(&BigUint::zero(), 10, &t).is_err());
    }

    #[test]
    fn spectrum_smallest_bound() {
        let t = table(100);
        let s = insulator_spectrum(3, &t).unwrap();
        assert_eq!(s.total, 1);
        assert_eq!(s.buckets.len(), 1);
        let b = &s.buckets[&BigUint::one()];
        assert_eq!(b.count, 1);
        assert_eq!(b.min_height, 2);
        assert_eq!((b.example.a(), b.example.b()), (1, 1));
    }

    #[test]
    fn spectrum_bucket_one_matches_fixed_insulator_search() {
        let t = table(100);
        let s = insulator_spectrum(11, &t).unwrap();
        let ones = find_by_insulator(&BigUint::one(), 10, &t).unwrap();
        assert_eq!(s.buckets[&BigUint::one()].count as usize, ones.len());
    }

    #[test]
    fn spectrum_conserves_total() {
        let t = table(1000);
        let s = insulator_spectrum(1000, &t).unwrap();
        let sum: u64 = s.buckets.values().map(|b| b.count).sum();
        assert_eq!(sum, s.total);
        for (value, b) in &s.buckets {
            assert!(b.count > 0);
            assert_eq!(b.example.height(), b.min_height, "example for {value} off its height");
        }
        let mut n = 0u64;
        enumerate_by_height(&HeightScanConfig::new(1000).unwrap(), &t, |_| {
            n += 1;
            Ok(())
        })
        .unwrap();
        assert_eq!(s.total, n);
    }

    #[test]
    fn records_first_row_and_monotonicity() {
        let t = table(1000);
        let rows = records_by_height(3, Merit::Quality, &t).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!((rows[0].triple.a(), rows[0].triple.b()), (1, 1));

        for merit in [Merit::Quality, Merit::Xyz, Merit::Ratio] {
            let rows = records_by_height(1000, merit, &t).unwrap();
            assert!(!rows.is_empty());
            let values: Vec<f64> = rows
                .iter()
                .map(|r| match merit {
                    Merit::Quality => r.stats.abc_quality,
                    Merit::Xyz => r.stats.xyz_merit,
                    Merit::Ratio => r.stats.weak_ratio,
                    Merit::InsulatorMin => unreachable!(),
                })
                .collect();
            assert!(values.windows(2).all(|w| w[0] < w[1]), "{merit:?} strictly increasing");
        }
    }

    #[test]
    fn records_top_matches_argmax_oracle() {
        let t = table(1000);
        let all = collect_triples(&HeightScanConfig::new(1000).unwrap(), &t);
        let best_by_oracle = all
            .iter()
            .max_by(|x, y| x.stats.xyz_merit.partial_cmp(&y.stats.xyz_merit).unwrap())
            .unwrap();
        let records = records_by_height(1000, Merit::Xyz, &t).unwrap();
        assert_eq!(records.last().unwrap(), best_by_oracle);

        let best_quality = all
            .iter()
            .max_by(|x, y| x.stats.abc_quality.partial_cmp(&y.stats.abc_quality).unwrap())
            .unwrap();
        let records = records_by_height(1000, Merit::Quality, &t).unwrap();
        assert_eq!(records.last().unwrap(), best_quality);
    }

    #[test]
    fn insulator_min_records_are_strictly_decreasing() {
        let t = table(1000);
        let rows = records_by_height(1000, Merit::InsulatorMin, &t).unwrap();
        assert!(!rows.is_empty());
        // Height scan opens with (1,1) whose insulator 1 is the global
        // minimum, so on this stream the table is that single row.
        assert_eq!(rows.len(), 1);
        assert!(rows[0].stats.insulator.is_one());
        assert!(rows
            .windows(2)
            .all(|w| w[1].stats.insulator < w[0].stats.insulator));
    }
}
