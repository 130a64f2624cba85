//! Behavior of the `catalan` binary: output formats, exit codes, and the
//! report round-trip guarantees.

use std::process::{Command, Output};

use catalan_cli::report::{DeviationTable, Envelope, TableResults};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catalan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().unwrap_or(-1)
}

#[test]
fn compute_ten_digits_text() {
    let out = run(&["compute", "--series", "theorem1", "--digits", "10"]);
    assert_eq!(exit_code(&out), 0);
    let s = stdout(&out);
    assert!(s.contains("0.9159655941"), "{s}");
    assert!(!s.contains("conjectured"));
}

#[test]
fn compute_one_digit() {
    let out = run(&["compute", "--series", "theorem1", "--digits", "1"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("\n0.9\n"), "{}", stdout(&out));
}

#[test]
fn compute_ramanujan_same_digits() {
    let a = run(&["compute", "--series", "theorem1", "--digits", "25", "--format", "json"]);
    let b = run(&["compute", "--series", "ramanujan", "--digits", "25", "--format", "json"]);
    let ea: Envelope<serde_json::Value> = serde_json::from_str(&stdout(&a)).unwrap();
    let eb: Envelope<serde_json::Value> = serde_json::from_str(&stdout(&b)).unwrap();
    assert_eq!(ea.results["value"], eb.results["value"]);
    assert_eq!(ea.command, "compute");
}

#[test]
fn compute_sun_is_labeled_conjectured() {
    let out = run(&["compute", "--series", "sun", "--digits", "12"]);
    assert_eq!(exit_code(&out), 0);
    let s = stdout(&out);
    assert!(s.starts_with("note:"), "{s}");
    assert!(s.contains("conjectured"), "{s}");
    let out = run(&["compute", "--series", "sun", "--digits", "12", "--format", "json"]);
    let e: Envelope<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(e.results["conjectured"], serde_json::Value::Bool(true));
}

#[test]
fn compute_incremental_method() {
    let out = run(&[
        "compute", "--series", "lupas", "--digits", "30", "--method", "incremental",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("0.915965594177219015054603514932"));
}

#[test]
fn json_determinism_modulo_timing() {
    let a = run(&["compute", "--series", "theorem1", "--digits", "50", "--format", "json"]);
    let b = run(&["compute", "--series", "theorem1", "--digits", "50", "--format", "json"]);
    let mut ea: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    let mut eb: serde_json::Value = serde_json::from_str(&stdout(&b)).unwrap();
    ea["elapsed_ms"] = 0.into();
    eb["elapsed_ms"] = 0.into();
    assert_eq!(
        serde_json::to_string(&ea).unwrap(),
        serde_json::to_string(&eb).unwrap()
    );
}

#[test]
fn table_csv_round_trip_and_header() {
    let out = run(&["table", "--n", "5,10", "--format", "csv"]);
    assert_eq!(exit_code(&out), 0);
    let s = stdout(&out);
    assert!(s.starts_with("N,lupas,ramanujan,sun,theorem1\n"), "{s}");
    let parsed = DeviationTable::from_csv(&s).unwrap();
    assert_eq!(parsed.to_csv(), s);
    assert_eq!(parsed.rows.len(), 2);
    assert_eq!(parsed.rows[0].n, 5);
}

#[test]
fn table_json_round_trip() {
    let out = run(&["table", "--n", "5,10", "--format", "json"]);
    let envelope: Envelope<TableResults> = serde_json::from_str(&stdout(&out)).unwrap();
    let table = DeviationTable {
        rows: envelope.results.rows.clone(),
    };
    let again: DeviationTable =
        serde_json::from_str(&serde_json::to_string(&table).unwrap()).unwrap();
    assert_eq!(again, table);
    // Full-precision deviations ride along under a separate key.
    assert_eq!(envelope.results.full.len(), 2);
    assert!(envelope.results.full[0].theorem1.contains('e'));
}

#[test]
fn table_known_cells() {
    let out = run(&["table", "--n", "10", "--format", "csv"]);
    let s = stdout(&out);
    let parsed = DeviationTable::from_csv(&s).unwrap();
    let row = &parsed.rows[0];
    assert_eq!(row.lupas, "-2.0e-7");
    assert_eq!(row.ramanujan, "-1.3e-9");
    assert_eq!(row.sun, "-2.6e-10");
    assert_eq!(row.theorem1, "+3.1e-11");
}

#[test]
fn table_small_indices() {
    // N below a series' first index still yields that series' first
    // partial sum; the lupas first term alone overshoots G by 0.14.
    let out = run(&["table", "--n", "1", "--format", "csv"]);
    assert_eq!(exit_code(&out), 0);
    let parsed = DeviationTable::from_csv(&stdout(&out)).unwrap();
    assert_eq!(parsed.rows[0].lupas, "+1.4e-1");
    assert_eq!(parsed.rows[0].ramanujan, "-3.0e-3");
}

#[test]
fn estimate_pins() {
    let out = run(&["estimate", "--series", "theorem1", "--digits", "906", "--format", "json"]);
    assert_eq!(exit_code(&out), 0);
    let e: Envelope<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    let n = e.results["predicted_terms"].as_u64().unwrap();
    assert!((995..=1005).contains(&n), "{n}");
    let rate = e.results["digits_per_term"].as_f64().unwrap();
    assert!((rate - 0.90309).abs() < 1e-4);
}

#[test]
fn estimate_rejects_baseline() {
    let out = run(&["estimate", "--series", "beta2_naive", "--digits", "10"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn bench_small() {
    let out = run(&["bench", "--digits", "60", "--repetitions", "1", "--format", "json"]);
    assert_eq!(exit_code(&out), 0);
    let e: Envelope<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(e.results["all_agree"], serde_json::Value::Bool(true));
    assert_eq!(e.results["rows"].as_array().unwrap().len(), 8);
}

#[test]
fn bench_term_counts_at_1000_digits() {
    // theorem1 needs about two thirds of ramanujan's terms (digit rates
    // 0.903 vs 0.602); counts include the rendering guard.
    let out = run(&["bench", "--digits", "1000", "--repetitions", "1", "--format", "json"]);
    assert_eq!(exit_code(&out), 0);
    let e: Envelope<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = e.results["rows"].as_array().unwrap();
    let terms = |series: &str| -> u64 {
        rows.iter()
            .find(|r| r["series"] == series && r["method"] == "binsplit")
            .unwrap()["terms_used"]
            .as_u64()
            .unwrap()
    };
    let th1 = terms("theorem1");
    let ram = terms("ramanujan");
    assert!((1115..=1121).contains(&th1), "theorem1 terms {th1}");
    assert!((1667..=1673).contains(&ram), "ramanujan terms {ram}");
    let ratio = th1 as f64 / ram as f64;
    assert!((ratio - 2.0 / 3.0).abs() < 0.01, "ratio {ratio}");
}

#[test]
fn bench_rejects_zero_repetitions() {
    let out = run(&["bench", "--digits", "100", "--repetitions", "0"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn bench_rejects_tiny_digits() {
    let out = run(&["bench", "--digits", "5", "--repetitions", "1"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(exit_code(&run(&["compute", "--series", "nope", "--digits", "10"])), 2);
    assert_eq!(exit_code(&run(&["compute", "--series", "theorem1", "--digits", "10", "--method", "x"])), 2);
    assert_eq!(exit_code(&run(&["compute", "--series", "beta2_naive", "--digits", "10"])), 2);
    assert_eq!(exit_code(&run(&["compute", "--series", "theorem1", "--digits", "10", "--format", "csv"])), 2);
    assert_eq!(exit_code(&run(&["verify", "--level", "nah"])), 2);
    assert_eq!(exit_code(&run(&["frobnicate"])), 2);
    assert_eq!(exit_code(&run(&["table", "--n", "0"])), 2);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("catalan-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&[
        "estimate", "--series", "ramanujan", "--digits", "307",
        "--format", "json", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).is_empty());
    let content = std::fs::read_to_string(&path).unwrap();
    let e: Envelope<serde_json::Value> = serde_json::from_str(&content).unwrap();
    let n = e.results["predicted_terms"].as_u64().unwrap();
    assert!((495..=505).contains(&n), "{n}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_fast_passes() {
    let out = run(&["verify", "--level", "fast", "--format", "json"]);
    assert_eq!(exit_code(&out), 0);
    let e: Envelope<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(e.results["passed"], serde_json::Value::Bool(true));
    let checks = e.results["checks"].as_array().unwrap();
    assert!(checks.len() >= 10);
    assert!(checks.iter().all(|c| c["passed"] == serde_json::Value::Bool(true)));
}
