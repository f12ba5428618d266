//! `insulators` — scriptable front end over the enumeration and
//! verification library.
//!
//! Output contract: every command emits one `#`-prefixed metadata line
//! (tool, version, bounds, flags that shape the data), then its payload.
//! Output bytes depend only on the flags that shape the data — never on
//! `--threads`. Exit codes: 0 success (and, for `verify`, no failures),
//! 1 runtime failure or failed verification, 2 usage or parameter error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use insulator_core::{
    enumerate_by_height, enumerate_by_smoothness, factorize, find_by_insulator, insulator,
    insulator_spectrum, is_insulated, primorial, records_by_height, report, theta_ratio_threshold,
    Eq2Check, Error, HeightRadCheck, HeightScanConfig, Merit, PrimeTable, SandwichCheck,
    SandwichParams,
};

const TOOL: &str = "insulators";
const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Default sieve size: zero-config for desk-scale runs, overridable with
/// `--sieve-limit` for big ones.
const DEFAULT_SIEVE: u64 = 10_000;
/// `eval` silently enlarges its sieve up to this point to cover the largest
/// prime factor; past it, insulator output is impractical and the table is
/// refused with an actionable message.
const EVAL_AUTO_SIEVE_CAP: u64 = 10_000_000;

#[derive(Parser)]
#[command(
    name = TOOL,
    version,
    about = "Exact complexity measures of primitive A+B+C=0 triples",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Worker threads for enumeration (output is identical for any count)
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Sieve bound override (default: sized from the command's bounds)
    #[arg(long, global = true)]
    sieve_limit: Option<u64>,

    /// Write output here instead of stdout. A relative path is resolved
    /// against $INSULATORS_OUT_DIR when that is set.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

impl Format {
    fn name(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Jsonl => "jsonl",
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum MeritArg {
    Quality,
    Xyz,
    Ratio,
}

impl From<MeritArg> for Merit {
    fn from(m: MeritArg) -> Merit {
        match m {
            MeritArg::Quality => Merit::Quality,
            MeritArg::Xyz => Merit::Xyz,
            MeritArg::Ratio => Merit::Ratio,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum CheckArg {
    Eq2,
    Heightrad,
    Sandwich,
    Theta,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate triples below a height bound, or smoothness-bounded up to
    /// a height cap
    Enumerate {
        /// Strict height bound X: emit triples with H < X
        #[arg(long, conflicts_with_all = ["smooth", "cap"])]
        height: Option<u64>,

        /// Smoothness bound P (prime): emit triples with S ≤ P ...
        #[arg(long, requires = "cap")]
        smooth: Option<u64>,

        /// ... and H ≤ CAP (the result is complete below the cap only)
        #[arg(long, requires = "smooth")]
        cap: Option<u64>,

        #[arg(long, value_enum, default_value = "csv")]
        format: Format,

        /// Work-partition width in heights (advanced; never affects output)
        #[arg(long)]
        chunk: Option<u64>,
    },

    /// Search a fixed insulator value, or aggregate the insulator spectrum
    Insulator {
        /// Insulator value to search for (decimal, any size)
        #[arg(long, conflicts_with_all = ["spectrum", "height"], requires = "cap")]
        value: Option<String>,

        /// Height cap for the fixed-value search (H ≤ CAP)
        #[arg(long)]
        cap: Option<u64>,

        /// Aggregate the spectrum of insulator values instead
        #[arg(long, requires = "height")]
        spectrum: bool,

        /// Strict height bound for --spectrum
        #[arg(long)]
        height: Option<u64>,

        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },

    /// Record tables: triples that strictly improve a merit in height order
    Records {
        /// Strict height bound X
        #[arg(long)]
        height: u64,

        /// quality = ln H / ln N; xyz = ln H / S^(2/3); ratio = ln H / S
        #[arg(long, value_enum)]
        merit: MeritArg,

        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },

    /// Run an inequality checker and emit a JSON report (exit 0 iff clean)
    Verify {
        #[arg(long, value_enum)]
        check: CheckArg,

        /// Strict height bound for the scanned stream (eq2, heightrad,
        /// sandwich)
        #[arg(long)]
        height: Option<u64>,

        /// Sandwich lower slope, 0 < alpha < ln 2
        #[arg(long)]
        alpha: Option<f64>,

        /// Sandwich upper slope, beta > ln 4
        #[arg(long)]
        beta: Option<f64>,

        /// Restrict the sandwich stream to insulator ≤ this bound
        #[arg(long)]
        max_insulator: Option<String>,

        /// Upper end of the theta ratio scan
        #[arg(long)]
        limit: Option<u64>,
    },

    /// Report factorization, rad, P+, primorial(P+), insulated-ness, and
    /// insulator of a single nonzero integer
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        n: i128,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidArgument(_) | Error::InvalidTriple(_) | Error::TableTooSmall { .. } => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}

fn usage_error(msg: &str) -> Error {
    Error::InvalidArgument(msg.to_string())
}

fn parse_biguint(text: &str, what: &str) -> Result<BigUint, Error> {
    BigUint::from_str(text)
        .map_err(|_| usage_error(&format!("{what} must be a decimal integer, got {text:?}")))
}

fn open_sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Error> {
    match out {
        None => Ok(Box::new(BufWriter::new(io::stdout()))),
        Some(path) => {
            let resolved = match std::env::var_os("INSULATORS_OUT_DIR") {
                Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
                _ => path.clone(),
            };
            let file = File::create(&resolved)?;
            Ok(Box::new(BufWriter::new(file)))
        }
    }
}

fn build_table(required: u64, common: &Common) -> Result<PrimeTable, Error> {
    PrimeTable::build(common.sieve_limit.unwrap_or(DEFAULT_SIEVE.max(required)))
}

fn header(out: &mut dyn Write, fields: &[(&str, String)]) -> io::Result<()> {
    writeln!(out, "{}", report::metadata_header(TOOL, VERSION, fields))
}

fn write_rows_header(out: &mut dyn Write, format: Format) -> io::Result<()> {
    if format == Format::Csv {
        writeln!(out, "{}", report::CSV_HEADER)?;
    }
    Ok(())
}

fn render_row(row: &insulator_core::ReportRow, format: Format) -> String {
    match format {
        Format::Csv => report::csv_row(row),
        Format::Jsonl => report::jsonl_row(row),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let common = &cli.common;
    match cli.command {
        Command::Enumerate { height: Some(bound), format, chunk, .. } => {
            let table = build_table(bound, common)?;
            let mut cfg = HeightScanConfig::new(bound)?.with_threads(common.threads);
            if let Some(c) = chunk {
                cfg = cfg.with_chunk(c)?;
            }
            let mut out = open_sink(&common.out)?;
            header(
                &mut out,
                &[
                    ("command", "enumerate".into()),
                    ("height_bound", bound.to_string()),
                    ("sieve_limit", table.limit().to_string()),
                    ("format", format.name().into()),
                ],
            )?;
            write_rows_header(&mut *out, format)?;
            enumerate_by_height(&cfg, &table, |row| {
                writeln!(out, "{}", render_row(row, format))?;
                Ok(())
            })?;
            out.flush()?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Enumerate { smooth: Some(p), cap: Some(cap), format, .. } => {
            let table = build_table(p, common)?;
            let mut out = open_sink(&common.out)?;
            // The summary is only known afterwards, but cap-limitation is
            // structural: declare it up front.
            header(
                &mut out,
                &[
                    ("command", "enumerate".into()),
                    ("smooth_bound", p.to_string()),
                    ("height_cap", cap.to_string()),
                    ("cap_limited", "true".into()),
                    ("sieve_limit", table.limit().to_string()),
                    ("format", format.name().into()),
                ],
            )?;
            write_rows_header(&mut *out, format)?;
            enumerate_by_smoothness(p, cap, &table, |row| {
                writeln!(out, "{}", render_row(row, format))?;
                Ok(())
            })?;
            out.flush()?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Enumerate { .. } => {
            Err(usage_error("enumerate needs either --height X or --smooth P --cap C"))
        }

        Command::Insulator { value: Some(text), cap, format, .. } => {
            let cap = cap.ok_or_else(|| usage_error("--value requires --cap"))?;
            let target = parse_biguint(&text, "--value")?;
            let table = build_table(cap.saturating_add(1), common)?;
            let mut out = open_sink(&common.out)?;
            header(
                &mut out,
                &[
                    ("command", "insulator".into()),
                    ("value", target.to_string()),
                    ("height_cap", cap.to_string()),
                    ("sieve_limit", table.limit().to_string()),
                    ("format", format.name().into()),
                ],
            )?;
            write_rows_header(&mut *out, format)?;
            for row in find_by_insulator(&target, cap, &table)? {
                writeln!(out, "{}", render_row(&row, format))?;
            }
            out.flush()?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Insulator { spectrum: true, height: Some(bound), .. } => {
            let table = build_table(bound, common)?;
            let spectrum = insulator_spectrum(bound, &table)?;
            let mut out = open_sink(&common.out)?;
            header(
                &mut out,
                &[
                    ("command", "insulator-spectrum".into()),
                    ("height_bound", bound.to_string()),
                    ("sieve_limit", table.limit().to_string()),
                ],
            )?;
            writeln!(out, "{}", report::spectrum_json(&spectrum))?;
            out.flush()?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Insulator { .. } => {
            Err(usage_error("insulator needs either --value I --cap C or --spectrum --height X"))
        }

        Command::Records { height, merit, format } => {
            let table = build_table(height, common)?;
            let rows = records_by_height(height, Merit::from(merit), &table)?;
            let mut out = open_sink(&common.out)?;
            header(
                &mut out,
                &[
                    ("command", "records".into()),
                    ("height_bound", height.to_string()),
                    ("merit", Merit::from(merit).name().into()),
                    ("sieve_limit", table.limit().to_string()),
                    ("format", format.name().into()),
                ],
            )?;
            write_rows_header(&mut *out, format)?;
            for row in &rows {
                writeln!(out, "{}", render_row(row, format))?;
            }
            out.flush()?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify { check, height, alpha, beta, max_insulator, limit } => {
            run_verify(common, check, height, alpha, beta, max_insulator, limit)
        }

        Command::Eval { n } => run_eval(common, n),
    }
}

fn run_verify(
    common: &Common,
    check: CheckArg,
    height: Option<u64>,
    alpha: Option<f64>,
    beta: Option<f64>,
    max_insulator: Option<String>,
    limit: Option<u64>,
) -> Result<ExitCode, Error> {
    let mut out = open_sink(&common.out)?;
    match check {
        CheckArg::Theta => {
            let limit = limit.ok_or_else(|| usage_error("--check theta requires --limit"))?;
            let table = build_table(limit, common)?;
            let thresholds = theta_ratio_threshold(limit, &table)?;
            header(
                &mut out,
                &[
                    ("command", "verify".into()),
                    ("check", "theta".into()),
                    ("limit", limit.to_string()),
                    ("sieve_limit", table.limit().to_string()),
                ],
            )?;
            writeln!(out, "{}", report::theta_json(&thresholds))?;
            out.flush()?;
            Ok(ExitCode::SUCCESS)
        }
        CheckArg::Sandwich => {
            let bound = height.ok_or_else(|| usage_error("--check sandwich requires --height"))?;
            let params = SandwichParams::new(
                alpha.ok_or_else(|| usage_error("--check sandwich requires --alpha"))?,
                beta.ok_or_else(|| usage_error("--check sandwich requires --beta"))?,
            )?;
            let insulator_cap = max_insulator
                .map(|text| parse_biguint(&text, "--max-insulator"))
                .transpose()?;
            let table = build_table(bound, common)?;
            let cfg = HeightScanConfig::new(bound)?.with_threads(common.threads);
            let mut checker = SandwichCheck::new(params);
            enumerate_by_height(&cfg, &table, |row| {
                if insulator_cap.as_ref().is_none_or(|cap| row.stats.insulator <= *cap) {
                    checker.observe(row);
                }
                Ok(())
            })?;
            let rep = checker.finish();
            let passed = rep.failures.is_empty();
            header(
                &mut out,
                &[
                    ("command", "verify".into()),
                    ("check", "sandwich".into()),
                    ("height_bound", bound.to_string()),
                    ("sieve_limit", table.limit().to_string()),
                ],
            )?;
            writeln!(out, "{}", report::sandwich_json(&rep, &format!("H < {bound}")))?;
            out.flush()?;
            Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        CheckArg::Eq2 | CheckArg::Heightrad => {
            let bound = height.ok_or_else(|| usage_error("this check requires --height"))?;
            let table = build_table(bound, common)?;
            let cfg = HeightScanConfig::new(bound)?.with_threads(common.threads);
            let mut eq2 = Eq2Check::new();
            let mut hr = HeightRadCheck::new();
            enumerate_by_height(&cfg, &table, |row| {
                match check {
                    CheckArg::Eq2 => eq2.observe(row),
                    CheckArg::Heightrad => hr.observe(row),
                    _ => unreachable!(),
                }
                Ok(())
            })?;
            let rep = match check {
                CheckArg::Eq2 => eq2.finish(),
                CheckArg::Heightrad => hr.finish(),
                _ => unreachable!(),
            };
            let passed = rep.passed();
            header(
                &mut out,
                &[
                    ("command", "verify".into()),
                    ("check", rep.check.into()),
                    ("height_bound", bound.to_string()),
                    ("sieve_limit", table.limit().to_string()),
                ],
            )?;
            writeln!(out, "{}", report::exact_check_json(&rep, &format!("H < {bound}")))?;
            out.flush()?;
            Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.saturating_mul(r) > n {
        r -= 1;
    }
    while (r + 1).saturating_mul(r + 1) <= n {
        r += 1;
    }
    r
}

fn run_eval(common: &Common, n: i128) -> Result<ExitCode, Error> {
    if n == 0 {
        return Err(usage_error("--n must be nonzero"));
    }
    let mag = n.unsigned_abs();
    let root = if mag > u64::MAX as u128 { u64::MAX } else { isqrt(mag as u64).saturating_add(1) };
    let mut table = build_table(root, common)?;
    let f = factorize(n, &table)?;

    // The insulator needs primes up to P+(n); grow the sieve quietly while
    // that stays desk-sized, otherwise ask for an explicit limit.
    let top = f.largest_prime();
    if top > table.limit() {
        if common.sieve_limit.is_some() || top > EVAL_AUTO_SIEVE_CAP {
            return Err(Error::TableTooSmall { needed: top, limit: table.limit() });
        }
        table = PrimeTable::build(top)?;
    }

    let rad = f.radical();
    let prim = primorial(top, &table)?;
    let insulated = is_insulated(&f, &table)?;
    let ins = insulator(&f, &table)?;

    let mut out = open_sink(&common.out)?;
    header(
        &mut out,
        &[
            ("command", "eval".into()),
            ("n", n.to_string()),
            ("sieve_limit", table.limit().to_string()),
        ],
    )?;
    writeln!(out, "n = {n}")?;
    writeln!(out, "factorization = {f}")?;
    writeln!(out, "rad = {rad}")?;
    writeln!(out, "P+ = {top}")?;
    writeln!(out, "primorial(P+) = {prim}")?;
    writeln!(out, "insulated = {insulated}")?;
    writeln!(out, "insulator = {ins}")?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}
