use std::process::Command;

use ssy_cli::report::{SWEEP_COLUMNS, SWEEP_SCHEMA_LINE};

fn ssy(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ssy")).args(args).output().expect("spawn ssy");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn in_process(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ssy").chain(args.iter().copied());
    let code = ssy_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(SWEEP_SCHEMA_LINE));
    assert_eq!(lines.next().unwrap(), SWEEP_COLUMNS.join(","));
    lines.map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn column(name: &str) -> usize {
    SWEEP_COLUMNS.iter().position(|c| *c == name).unwrap()
}

#[test]
fn eval_reports_holder_below_young() {
    let (code, out, _) = ssy(&["eval", "--n", "3", "--q", "0.125"]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "CH_lt_CY"), Some("true"));
    let ch: f64 = field(&out, "CH").unwrap().parse().unwrap();
    let cy: f64 = field(&out, "CY").unwrap().parse().unwrap();
    assert!(ch < cy);
}

#[test]
fn eval_outside_domain_exits_one() {
    let (code, out, err) = ssy(&["eval", "--n", "5", "--q", "0.7"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("sqrt(2/5)"), "{err}");
}

#[test]
fn eval_zero_curvature_is_minimal_like() {
    let (code, out, _) = ssy(&["eval", "--n", "3", "--q", "0.1", "--H", "0", "--R", "1", "--theta", "0.5"]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "regime"), Some("MinimalLike"));
    let c: f64 = field(&out, "curvature_coefficient").unwrap().parse().unwrap();
    assert_eq!(c, 0.0);
}

#[test]
fn eval_structured_output_parses() {
    let (code, out, _) = ssy(&["eval", "--n", "3", "--q", "0.125", "--format", "structured"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v.to_string().contains("CH"));
}

#[test]
fn three_point_sweep() {
    let (code, out, _) = ssy(&["sweep", "--n", "3", "--q", "0.01,0.05,0.125"]);
    assert_eq!(code, 0);
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 3);
    for row in rows {
        assert_eq!(row.len(), SWEEP_COLUMNS.len());
        assert_eq!(row[column("status")], "ok");
        let r: f64 = row[column("ratio")].parse().unwrap();
        assert!(r > 0.4 && r < 1.0, "ratio {r}");
    }
}

#[test]
fn sweep_past_boundary_marks_domain_errors() {
    let (code, out, _) = ssy(&["sweep", "--n", "3", "--q-min", "0.5", "--q-max", "1.0", "--steps", "6"]);
    assert_eq!(code, 0);
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 6);
    let bound = (2.0f64 / 3.0).sqrt();
    for row in rows {
        let q: f64 = row[column("q")].parse().unwrap();
        let status = &row[column("status")];
        if q < bound {
            assert_eq!(status, "ok");
        } else {
            assert_eq!(status, "domain_error");
            assert!(row[column("A")..column("status")].iter().all(String::is_empty));
        }
    }
}

#[test]
fn sweep_files_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let (code, _, _) =
            ssy(&["sweep", "--n", "2..12", "--q-min", "0", "--q-max", "1", "--steps", "50", "--out", path.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
    let a = std::fs::read(a).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, std::fs::read(b).unwrap());
}

#[test]
fn unwritable_output_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let (code, _, _) = ssy(&["sweep", "--n", "3", "--q", "0.1", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 3);
}

#[test]
fn certify_comparison_is_proven() {
    let (code, out, _) = ssy(&["certify", "holder-beats-young", "--n", "2..12", "--q", "1e-3..0.125"]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "schema"), Some("ssy-certificate/1"));
    assert_eq!(field(&out, "status"), Some("Proven"));
}

#[test]
fn certify_gap_disproven_with_witness() {
    let (code, out, _) = ssy(&["certify", "gap-positive", "--n", "3", "--q", "0.8..0.83"]);
    assert_eq!(code, 2);
    assert_eq!(field(&out, "status"), Some("Disproven"));
    assert!(field(&out, "witness").unwrap().starts_with("n=3"));
}

#[test]
fn certify_monotone_is_proven() {
    let (code, out, _) = ssy(&["certify", "f-monotone", "--q", "1e-3..0.9"]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "status"), Some("Proven"));
}

#[test]
fn certify_unknown_claim_is_usage_error() {
    let (code, _) = in_process(&["certify", "no-such-claim", "--q", "0.1..0.2"]);
    assert_eq!(code, 1);
}

#[test]
fn oracle_check_default_grid_passes() {
    let (code, out, _) = ssy(&["oracle-check"]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "status"), Some("pass"));
}

#[test]
fn oracle_check_empty_grid_is_usage_error() {
    let (code, _) = in_process(&["oracle-check", "--n", "3", "--steps", "0", "--near-boundary", "none"]);
    assert_eq!(code, 1);
}

#[test]
fn bernstein_ranges() {
    let (code, out) = in_process(&["bernstein", "--n", "5..6"]);
    assert_eq!(code, 0);
    let blocks: Vec<&str> = out.split("\n\n").collect();
    assert_eq!(field(blocks[0], "nonempty"), Some("true"));
    assert!(field(blocks[0], "range").unwrap().starts_with("(5.0000000000000000e-1,"));
    assert_eq!(field(blocks[1], "range"), Some("empty"));
}

#[test]
fn optimize_agrees_with_grid() {
    let (code, out) = in_process(&["optimize", "--target", "holder", "--n", "3", "--q", "0.125", "--check-grid"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn compare_runs() {
    let (code, out) = in_process(&["compare", "--n", "3", "--q-min", "0.01", "--q-max", "0.8", "--steps", "5"]);
    assert_eq!(code, 0);
    assert!(!out.is_empty());
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(in_process(&["frobnicate"]).0, 1);
    assert_eq!(in_process(&["sweep", "--n", "3"]).0, 1);
    assert_eq!(in_process(&["sweep", "--n", "3", "--q-min", "0.5", "--q-max", "0.1"]).0, 1);
    assert_eq!(in_process(&["sweep", "--n", "3", "--q", "0.1..0.2", "--steps", "1"]).0, 1);
    assert_eq!(in_process(&["--help"]).0, 0);
}

#[test]
fn in_process_matches_binary() {
    let args = ["sweep", "--n", "2,7", "--q", "0..0.6", "--steps", "7"];
    let (code, out) = in_process(&args);
    let (bin_code, bin_out, _) = ssy(&args);
    assert_eq!(code, bin_code);
    assert_eq!(out, bin_out);
}
