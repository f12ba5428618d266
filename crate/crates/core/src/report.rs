//! Deterministic text rendering: CSV rows, JSON-lines rows, spectrum and
//! verification reports, and the `#`-prefixed metadata header.
//!
//! Rows are formatted by hand so the byte layout is pinned: exact integers
//! as full decimal strings (the conductor and insulator outgrow fixed-width
//! words quickly), floats in Rust's shortest round-trip form. Structured
//! reports go through `serde_json` with insertion order preserved.

use serde_json::{json, Map, Value};

use crate::enumeration::{ReportRow, SmoothnessSummary, Spectrum};
use crate::verify::{ExactCheckReport, SandwichReport, SandwichSide, ThetaThresholds};

/// Column layout shared by CSV and JSONL outputs.
pub const CSV_HEADER: &str = "a,b,c,H,N,S,I,quality,merit,ratio";

pub fn csv_row(row: &ReportRow) -> String {
    let s = &row.stats;
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        row.triple.a(),
        row.triple.b(),
        row.triple.c(),
        s.height,
        s.conductor,
        s.smoothness,
        s.insulator,
        s.abc_quality,
        s.xyz_merit,
        s.weak_ratio,
    )
}

/// One JSON object per row. `N` and `I` are decimal strings (exact at any
/// size); the other fields are plain JSON numbers.
pub fn jsonl_row(row: &ReportRow) -> String {
    let s = &row.stats;
    format!(
        "{{\"a\":{},\"b\":{},\"c\":{},\"H\":{},\"N\":\"{}\",\"S\":{},\"I\":\"{}\",\"quality\":{},\"merit\":{},\"ratio\":{}}}",
        row.triple.a(),
        row.triple.b(),
        row.triple.c(),
        s.height,
        s.conductor,
        s.smoothness,
        s.insulator,
        s.abc_quality,
        s.xyz_merit,
        s.weak_ratio,
    )
}

/// `# tool version | k=v | k=v ...`
pub fn metadata_header(tool: &str, version: &str, fields: &[(&str, String)]) -> String {
    let mut line = format!("# {tool} {version}");
    for (k, v) in fields {
        line.push_str(&format!(" | {k}={v}"));
    }
    line
}

fn triple_value(t: &crate::triples::Triple) -> Value {
    json!({ "a": t.a(), "b": t.b(), "c": t.c() as i64 })
}

/// Spectrum as a JSON document; bucket keys are decimal insulator values in
/// ascending numeric order.
pub fn spectrum_json(s: &Spectrum) -> String {
    let mut buckets = Map::new();
    for (value, bucket) in &s.buckets {
        buckets.insert(
            value.to_string(),
            json!({
                "count": bucket.count,
                "min_height": bucket.min_height,
                "example": triple_value(&bucket.example),
            }),
        );
    }
    let doc = json!({
        "height_bound": s.height_bound,
        "total": s.total,
        "buckets": buckets,
    });
    serde_json::to_string_pretty(&doc).expect("spectrum serializes")
}

/// The `{check, range, parameters, scanned, failures, threshold, passed}`
/// verification report shape, shared by all checks.
fn check_report(
    check: &str,
    range: Value,
    parameters: Value,
    scanned: u64,
    failures: Value,
    threshold: Value,
    passed: bool,
) -> String {
    let doc = json!({
        "check": check,
        "range": range,
        "parameters": parameters,
        "scanned": scanned,
        "failures": failures,
        "threshold": threshold,
        "passed": passed,
    });
    serde_json::to_string_pretty(&doc).expect("report serializes")
}

pub fn exact_check_json(report: &ExactCheckReport, range: &str) -> String {
    let failures: Vec<Value> = report.failures.iter().map(triple_value).collect();
    check_report(
        report.check,
        json!(range),
        json!({}),
        report.scanned,
        Value::Array(failures),
        Value::Null,
        report.passed(),
    )
}

pub fn sandwich_json(report: &SandwichReport, range: &str) -> String {
    let failures: Vec<Value> = report
        .failures
        .iter()
        .map(|f| {
            json!({
                "triple": triple_value(&f.triple),
                "smoothness": f.smoothness,
                "log_conductor": f.log_conductor,
                "side": match f.side {
                    SandwichSide::Lower => "lower",
                    SandwichSide::Upper => "upper",
                },
            })
        })
        .collect();
    check_report(
        "sandwich",
        json!(range),
        json!({
            "alpha": report.alpha,
            "beta": report.beta,
            "max_smoothness_seen": report.max_smoothness_seen,
        }),
        report.scanned,
        Value::Array(failures),
        report.failure_threshold.map_or(Value::Null, |s| json!(s)),
        report.failures.is_empty(),
    )
}

pub fn theta_json(th: &ThetaThresholds) -> String {
    check_report(
        "theta",
        json!({ "limit": th.limit }),
        json!({}),
        th.limit,
        Value::Array(Vec::new()),
        json!({ "x0_lower": th.x0_lower, "x0_upper": th.x0_upper }),
        true,
    )
}

/// Metadata fields for a smoothness run, including its completeness
/// disclaimer.
pub fn smoothness_metadata(s: &SmoothnessSummary) -> Vec<(&'static str, String)> {
    vec![
        ("smooth_bound", s.smooth_bound.to_string()),
        ("height_cap", s.height_cap.to_string()),
        ("cap_limited", s.cap_limited.to_string()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{enumerate_by_height, HeightScanConfig};
    use crate::primecore::PrimeTable;
    use crate::triples::{stats, Triple};

    fn row(a: u64, b: u64) -> ReportRow {
        let table = PrimeTable::build(1000).unwrap();
        let triple = Triple::new(a, b).unwrap();
        let stats = stats(&triple, &table).unwrap();
        ReportRow { triple, stats }
    }

    #[test]
    fn csv_row_layout() {
        assert_eq!(row(1, 1).stats.height, 2);
        let line = csv_row(&row(1, 1));
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 10);
        assert_eq!(&fields[..7], &["1", "1", "-2", "2", "2", "2", "1"]);
        assert_eq!(fields[7], "1"); // quality = ln2/ln2
    }

    #[test]
    fn jsonl_row_is_valid_json() {
        let line = jsonl_row(&row(1, 8));
        let v: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert_eq!(v["a"], 1);
        assert_eq!(v["c"], -9);
        assert_eq!(v["H"], 9);
        assert_eq!(v["N"], "6");
        assert_eq!(v["I"], "1");
        assert!(v["quality"].as_f64().unwrap() > 1.0);
    }

    #[test]
    fn metadata_header_layout() {
        let h = metadata_header("insulators", "0.1.0", &[("height_bound", "3".into())]);
        assert_eq!(h, "# insulators 0.1.0 | height_bound=3");
    }

    #[test]
    fn spectrum_json_is_numerically_ordered() {
        let table = PrimeTable::build(100).unwrap();
        let s = crate::enumeration::insulator_spectrum(30, &table).unwrap();
        let text = spectrum_json(&s);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["total"].as_u64().unwrap(), s.total);
        let keys: Vec<String> = v["buckets"].as_object().unwrap().keys().cloned().collect();
        let mut sorted = keys.clone();
        sorted.sort_by_key(|k| k.parse::<u128>().unwrap());
        assert_eq!(keys, sorted, "bucket keys in ascending numeric order");
    }

    #[test]
    fn rendering_deterministic_across_scans() {
        let table = PrimeTable::build(200).unwrap();
        let render = |threads: usize| {
            let cfg = HeightScanConfig::new(200).unwrap().with_threads(threads);
            let mut out = String::new();
            enumerate_by_height(&cfg, &table, |r| {
                out.push_str(&csv_row(r));
                out.push('\n');
                Ok(())
            })
            .unwrap();
            out
        };
        assert_eq!(render(1), render(4));
    }
}
