use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn sdwtc(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdwtc"))
        .args(args)
        .current_dir(dir)
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .env_remove("SDWTC_CELL_BUDGET")
        .output()
        .unwrap()
}

fn json(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn with_examples() -> TempDir {
    let d = tempfile::tempdir().unwrap();
    json(&sdwtc(d.path(), &["example", "msaf"]));
    json(&sdwtc(d.path(), &["example", "coin"]));
    d
}

const QUICK: [&str; 8] = ["--card-u", "2", "--card-v", "3", "--restarts", "3", "--steps", "200"];

#[test]
fn msaf_reference_region_reaches_capacity() {
    let d = with_examples();
    let v = json(&sdwtc(d.path(), &["region", "--channel", "msaf_channel.json", "--aux", "msaf_aux.json"]));
    assert!((v["sum_intercept"].as_f64().unwrap() - 0.603218).abs() < 1e-6);
    assert_eq!(v["manifest"]["command"], "region");
    assert_eq!(v["manifest"]["inputs"].as_array().unwrap().len(), 2);
    assert_eq!(v["manifest"]["timestamp"], 1_700_000_000);
}

#[test]
fn coin_example_reports_the_contradiction() {
    let d = tempfile::tempdir().unwrap();
    let v = json(&sdwtc(d.path(), &["example", "coin"]));
    assert_eq!(v["report"]["r_zib"].as_f64(), Some(2.0));
    assert_eq!(v["report"]["cr_upper_bound"].as_f64(), Some(2.0));
    assert!(d.path().join("coin_aux.json").exists());
}

#[test]
fn identical_runs_produce_identical_documents() {
    let d = with_examples();
    let mut args = vec!["region", "--channel", "coin_channel.json", "--search", "--seed", "7"];
    args.extend(QUICK);
    let a = sdwtc(d.path(), &args);
    let b = sdwtc(d.path(), &args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["search"]["aux_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn validation_failures_exit_with_one() {
    let d = with_examples();
    std::fs::write(d.path().join("bad.json"), "{\"alphabets\": ").unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["region", "--channel", "bad.json", "--aux", "msaf_aux.json"],
        vec!["region", "--channel", "missing.json", "--aux", "msaf_aux.json"],
        vec!["region", "--channel", "msaf_channel.json", "--aux", "msaf_aux.json", "--scheme", "NOPE"],
        vec!["example", "nope"],
        vec!["example", "msaf", "--sigma", "0.7"],
        vec!["region", "--channel", "msaf_channel.json", "--aux", "msaf_aux.json", "--search"],
        vec!["simulate", "--channel", "msaf_channel.json", "--aux", "msaf_aux.json", "--eps-typ", "2"],
        vec!["frobnicate"],
    ];
    for args in cases {
        let o = sdwtc(d.path(), &args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn per_on_a_state_dependent_auxiliary_is_rejected() {
    let d = with_examples();
    // the reference MSAF auxiliary puts V = L, which depends on the state
    let o = sdwtc(d.path(), &["region", "--channel", "msaf_channel.json", "--aux", "msaf_aux.json", "--scheme", "PER"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tiny_cell_budget_exits_with_two() {
    let d = with_examples();
    let mut args = vec!["region", "--channel", "msaf_channel.json", "--search"];
    args.extend(QUICK);
    let o = Command::new(env!("CARGO_BIN_EXE_sdwtc"))
        .args(&args)
        .current_dir(d.path())
        .env("SDWTC_CELL_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn single_scheme_comparison_has_one_row() {
    let d = with_examples();
    let mut args = vec!["compare", "--channel", "coin_channel.json", "--schemes", "GCP"];
    args.extend(QUICK);
    let v = json(&sdwtc(d.path(), &args));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["scheme"], "GCP");
}

#[test]
fn exact_simulation_reports_leakage() {
    let d = with_examples();
    let v = json(&sdwtc(
        d.path(),
        &[
            "simulate", "--channel", "msaf_channel.json", "--aux", "msaf_aux.json", "--n", "2", "--rate-m", "0.5",
            "--trials", "50", "--exact",
        ],
    ));
    let r = &v["reports"][0];
    assert!(r["leakage_bits"].as_f64().unwrap() >= -1e-12);
    assert!(r.get("key_tv_exact").is_some());
}

#[test]
fn simulation_sweep_writes_one_csv_row_per_grid_point() {
    let d = with_examples();
    let o = sdwtc(
        d.path(),
        &[
            "simulate", "--channel", "coin_channel.json", "--aux", "coin_aux.json", "--n", "2,3", "--rate-m", "0,0.5,1",
            "--trials", "20", "--format", "csv", "--out", "sweep.csv",
        ],
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(d.path().join("sweep.csv")).unwrap();
    assert!(text.starts_with("# command: simulate"));
    let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data.len(), 1 + 6);
    assert!(data[0].contains("avg_error"));
}
