use std::process::Command;

use fatpoint::configuration::lookup;
use fatpoint::polytope::RationalPolygon;
use fatpoint::{hilbert_function, newton_polytope, staircase_from_hilbert};
use fatpoint_cli::{run, LimitJson};
use serde_json::Value;

fn ok(args: &[&str]) -> Value {
    let mut full = vec!["fatpoint"];
    full.extend_from_slice(args);
    let out = run(full);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    let mut full = vec!["fatpoint"];
    full.extend_from_slice(args);
    run(full).code
}

#[test]
fn neg_for_h_lists_twelve_classes() {
    let v = ok(&["neg", "--config", "two-lines-3-meeting"]);
    let classes = v.as_array().unwrap();
    assert_eq!(classes.len(), 12);
    assert!(classes.contains(&serde_json::json!([2, [0, 1, 1, 1, 1, 1]])));
    assert!(classes.contains(&serde_json::json!([1, [1, 1, 1, 0, 0, 0]])));
}

#[test]
fn limit_for_h() {
    let v = ok(&["limit", "--config", "two-lines-3-meeting", "--m", "12,24,36"]);
    assert_eq!(
        v["vertices"],
        serde_json::json!([["0", "3"], ["1/2", "2"], ["4/3", "1"], ["7/3", "0"]])
    );
    assert_eq!(v["exact"], true);
    assert_eq!(v["complement_area"], "3");
    assert_eq!(v["segment_count"], 3);
    assert_eq!(v["incidence_types"], 3);
}

#[test]
fn hilbert_with_oracle_check() {
    let v = ok(&["hilbert", "--config", "generic", "--m", "1", "--oracle-check"]);
    assert_eq!(v["oracle_agrees"], true);
    assert_eq!(v["values"][2], 0);
    assert_eq!(v["values"][3], 4);
}

#[test]
fn verify_reports_agreement_per_degree() {
    let v = ok(&["verify", "--config", "all", "--m", "1,2"]);
    let runs = v.as_array().unwrap();
    assert_eq!(runs.len(), 22);
    assert!(runs.iter().all(|r| r["agrees"] == true));
}

#[test]
fn gin_staircase_shape() {
    let v = ok(&["gin", "--config", "two-lines-3-meeting", "--m", "12"]);
    assert_eq!(v["staircase"]["alpha"], 28);
    assert_eq!(v["staircase"]["lambdas"][0], 36);
    assert_eq!(v["generators_by_degree"]["28"], 5);
}

#[test]
fn polytope_output_round_trips() {
    let v = ok(&["polytope", "--config", "two-lines-3-meeting", "--m", "24"]);
    let back: RationalPolygon = serde_json::from_value(v["vertices"].clone()).unwrap();
    let cfg = lookup("two-lines-3-meeting").unwrap().config;
    let s = staircase_from_hilbert(&hilbert_function(&cfg, 24).unwrap()).unwrap();
    assert_eq!(back, newton_polytope(&s));
}

#[test]
fn output_is_deterministic() {
    let args = ["fatpoint", "limit", "--config", "all", "--m", "12,24,36"];
    let a = run(args);
    let b = run(args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_file_matches_the_catalog_type() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.json");
    // H with its lines relabeled
    std::fs::write(
        &path,
        r#"{"points": 6, "curves": [{"degree": 1, "points": [2, 4, 6]}, {"degree": 1, "points": [1, 3, 6]}]}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let from_file = ok(&["hilbert", "--config", p, "--m", "2", "--oracle-check"]);
    let from_slug = ok(&["hilbert", "--config", "two-lines-3-meeting", "--m", "2"]);
    assert_eq!(from_file["values"], from_slug["values"]);
    assert_eq!(from_file["oracle_agrees"], true);
}

#[test]
fn validation_errors_exit_with_two() {
    assert_eq!(code(&["neg", "--config", "no-such-type"]), 2);
    assert_eq!(code(&["limit", "--config", "generic", "--m", "12,24"]), 2);
    assert_eq!(code(&["hilbert", "--config", "generic", "--m", "0"]), 2);
    assert_eq!(code(&["hilbert", "--config", "generic"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"points": 6, "curves": [{"degree": 1, "points": [1, 2]}]}"#).unwrap();
    assert_eq!(code(&["neg", "--config", bad.to_str().unwrap()]), 2);
    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(code(&["neg", "--config", bad.to_str().unwrap()]), 2);
    let unwritable = dir.path().join("missing").join("out.json");
    assert_eq!(code(&["catalog", "--out", unwritable.to_str().unwrap()]), 2);
}

#[test]
fn csv_output() {
    let out = run(["fatpoint", "hilbert", "--config", "generic", "--m", "1", "--format", "csv"]);
    assert_eq!(out.code, 0);
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next(), Some("config,m,t,h"));
    assert_eq!(lines.nth(3), Some("generic,1,3,4"));
}

#[test]
fn catalog_lists_eleven_types() {
    let v = ok(&["catalog"]);
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 11);
    let h = entries.iter().find(|e| e["slug"] == "two-lines-3-meeting").unwrap();
    assert_eq!(h["alias"]["letter"], "H");
    assert_eq!(h["incidence_types"], 3);
}

#[test]
fn figure_from_limit_output() {
    let dir = tempfile::tempdir().unwrap();
    let limits = dir.path().join("limits.json");
    let svg = dir.path().join("atlas.svg");
    let l = limits.to_str().unwrap();
    assert_eq!(code(&["limit", "--config", "all", "--m", "12,24,36", "--out", l]), 0);
    let reports: Vec<LimitJson> = serde_json::from_str(&std::fs::read_to_string(&limits).unwrap()).unwrap();
    assert_eq!(reports.len(), 11);

    let s = svg.to_str().unwrap();
    assert_eq!(code(&["figure", "--input", l, "--format", "svg", "--out", s]), 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches(r#"class="panel""#).count(), 11);
    assert!(text.contains("(1/2, 2)") && text.contains("(4/3, 1)") && text.contains("(7/3, 0)"));
    assert!(!text.contains("(2, 1/3)"));

    let again = dir.path().join("again.svg");
    assert_eq!(code(&["figure", "--input", l, "--out", again.to_str().unwrap()]), 0);
    assert_eq!(std::fs::read(&svg).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn figure_rejects_other_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("neg.json");
    std::fs::write(&path, "[[1, [1, 1, 1, 0, 0, 0]]]").unwrap();
    assert_eq!(code(&["figure", "--input", path.to_str().unwrap()]), 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_fatpoint");
    let status = Command::new(bin).args(["neg", "--config", "nope"]).output().unwrap();
    assert_eq!(status.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&status.stderr).contains("nope"));
    let status = Command::new(bin).args(["neg", "--config", "line-6"]).output().unwrap();
    assert_eq!(status.status.code(), Some(0));
}
