//! Exact complexity measures of primitive solutions to `A + B + C = 0`.
//!
//! A *triple* here is a primitive (`gcd(A,B,C) = 1`), non-cuspidal
//! (`ABC ≠ 0`) integer solution of `A + B + C = 0`. The crate measures such
//! triples four ways —
//!
//! * height `H = max(|A|, |B|, |C|)`,
//! * conductor `N = rad(ABC)`,
//! * smoothness `S = P+(ABC)` (largest prime factor),
//! * insulator `I = primorial(S) / N`, the smallest positive integer making
//!   `ABC · I` divisible by every prime up to its largest prime factor —
//!
//! and provides exhaustive, bound-certified enumeration of the triples below
//! a height bound, smooth-number machinery, fixed-insulator searches, record
//! tables for the derived merit functionals, and empirical checkers for the
//! inequalities tying the four measures together. All integer quantities are
//! exact (arbitrary precision where they outgrow machine words); floating
//! point appears only in derived instrumentation (logs and merit ratios).
//!
//! ```
//! use insulator_core::{PrimeTable, Triple, stats};
//!
//! let table = PrimeTable::build(10_000).unwrap();
//! let t = Triple::new(1, 8).unwrap(); // (1, 8, -9)
//! let s = stats(&t, &table).unwrap();
//! assert_eq!(s.height, 9);
//! assert_eq!(s.conductor, 6);
//! assert_eq!(s.smoothness, 3);
//! assert_eq!(s.insulator.to_string(), "1");
//! ```

pub mod enumeration;
pub mod error;
pub mod primecore;
pub mod report;
pub mod triples;
pub mod verify;

pub use enumeration::{
    enumerate_by_height, enumerate_by_smoothness, find_by_insulator, generate_smooth_numbers,
    insulator_spectrum, records_by_height, EnumerationSummary, HeightScanConfig, Merit,
    RecordTracker, ReportRow, SmoothnessSummary, Spectrum, SpectrumBucket,
};
pub use error::{Error, Result};
pub use primecore::{
    chebyshev_theta, factorize, factorize_u64, insulator, is_insulated, ln_biguint,
    log_primorial, primorial, Factorization, PrimeTable, PrimorialCache, Sign,
};
pub use triples::{
    abc_quality, canonicalize, mersenne_family, stats, weak_xyz_ratio, xyz_merit, OrbitInfo,
    StatsContext, Triple, TripleStats,
};
pub use verify::{
    theta_ratio_threshold, Eq2Check, ExactCheckReport, HeightRadCheck, SandwichCheck,
    SandwichFailure, SandwichParams, SandwichReport, SandwichSide, ThetaThresholds,
};

/// Re-exported big-integer types used in public signatures.
pub use num_bigint::{BigInt, BigUint};
