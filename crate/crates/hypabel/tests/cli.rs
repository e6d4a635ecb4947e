//! Integration tests driving the installed binary end to end: grid CSV
//! output, verification suites with their exit codes, the parameter table,
//! sweep orchestration, and config-file handling.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hypabel"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

/// Parsed data rows of a transform CSV: (s, rf, af, adf, err).
fn parse_rows(text: &str) -> Vec<(f64, f64, f64, Option<f64>, f64)> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s,Rf,Af,ADf,err"), "header row");
    lines
        .map(|l| {
            let cols: Vec<&str> = l.split(',').collect();
            assert_eq!(cols.len(), 5, "row {l:?}");
            (
                cols[0].parse().unwrap(),
                cols[1].parse().unwrap(),
                cols[2].parse().unwrap(),
                if cols[3].is_empty() {
                    None
                } else {
                    Some(cols[3].parse().unwrap())
                },
                cols[4].parse().unwrap(),
            )
        })
        .collect()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hypabel-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

#[test]
fn transform_grid_has_expected_shape_and_sum_rule() {
    let out = run(&[
        "transform", "--field", "R", "--p", "0", "--q", "2", "--s-min", "-2", "--s-max", "2",
        "--step", "0.05",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let rows = parse_rows(&stdout(&out));
    assert_eq!(rows.len(), 81);

    // The transform is not even in s, but the two tails are complementary:
    // Af(s) + Af(-s) is exactly the full-line value 2 pi sqrt(pi).
    let full = 2.0 * PI * PI.sqrt();
    for k in 0..rows.len() {
        let mirror = rows.len() - 1 - k;
        let sum = rows[k].2 + rows[mirror].2;
        assert!(
            (sum - full).abs() <= 1e-7,
            "Af({}) + Af({}) = {sum}, want {full}",
            rows[k].0,
            rows[mirror].0
        );
    }

    // The operator column is only defined where the iterated stencil has a
    // full neighborhood: four margin points on each side stay empty.
    for k in 0..rows.len() {
        if k < 4 || k >= rows.len() - 4 {
            assert!(rows[k].3.is_none(), "margin row {k} must be empty");
        } else {
            assert!(rows[k].3.is_some(), "interior row {k} must be filled");
        }
    }
}

#[test]
fn transform_of_bump_vanishes_outside_its_radius() {
    let out = run(&[
        "transform", "--field", "R", "--p", "1", "--q", "1", "--probe", "bump", "--radius", "1",
        "--s-min", "-3", "--s-max", "3", "--step", "0.25",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let rows = parse_rows(&stdout(&out));
    let max = rows.iter().fold(0.0_f64, |a, r| a.max(r.2.abs()));
    assert!(max > 0.0);
    for (s, _, af, _, _) in &rows {
        if s.abs() > 1.05 {
            assert!(af.abs() <= 1e-8 * max, "Af({s}) = {af} outside the support");
        }
    }
}

#[test]
fn zero_probe_produces_zero_columns() {
    let out = run(&["transform", "--probe", "zero", "--s-min", "0", "--s-max", "1", "--step", "0.25"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    for (_, rf, af, _, _) in parse_rows(&stdout(&out)) {
        assert_eq!(rf, 0.0);
        assert_eq!(af, 0.0);
    }
}

#[test]
fn csv_output_is_bit_stable_across_runs() {
    let args = [
        "transform", "--field", "C", "--p", "0", "--q", "2", "--s-min", "-1", "--s-max", "1",
        "--step", "0.25",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout, "identical runs must emit identical bytes");
}

#[test]
fn gnuplot_header_flag_prefixes_the_header_row() {
    let out = run(&[
        "transform", "--s-min", "0", "--s-max", "1", "--step", "0.5", "--gnuplot-header",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("# s,Rf,Af,ADf,err\n"));
}

#[test]
fn output_file_is_written_atomically() {
    let dir = scratch("atomic");
    let path = dir.join("grid.csv");
    let out = run(&[
        "transform", "--s-min", "0", "--s-max", "1", "--step", "0.5", "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = std::fs::read_to_string(&path).expect("output file");
    assert_eq!(parse_rows(&text).len(), 3);
    let leftovers: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .filter(|n| n.to_string_lossy() != "grid.csv")
        .collect();
    assert!(leftovers.is_empty(), "temp files left behind: {leftovers:?}");
}

#[test]
fn verify_consistency_emits_passing_json_report() {
    let out = run(&["verify", "--suite", "consistency", "--field", "R", "--p", "0", "--q", "2"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json report");
    let obj = v.as_object().expect("object");
    let mut keys: Vec<&str> = obj.keys().map(|k| k.as_str()).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["checks", "config", "suite", "version"]);
    assert_eq!(v["suite"], "consistency");
    let checks = v["checks"].as_array().expect("checks array");
    assert!(!checks.is_empty());
    for c in checks {
        assert!(c["name"].is_string());
        assert!(c["measured"].is_number());
        assert!(c["threshold"].is_number());
        assert_eq!(c["pass"], true);
    }
}

#[test]
fn verify_rejects_inapplicable_suite_with_usage_exit() {
    // The support suite needs p >= q; (R,0,2) is an expansion-regime space.
    let out = run(&[
        "verify", "--suite", "support", "--field", "R", "--p", "0", "--q", "2", "--probe",
        "bump", "--radius", "1",
    ]);
    assert_eq!(code(&out), 2, "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("not applicable"));
}

#[test]
fn verify_unknown_suite_is_usage_error() {
    let out = run(&["verify", "--suite", "nonsense"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown suite"));
}

#[test]
fn verify_computation_failure_exits_one() {
    // A compact probe has no exponential tail, so the growth-exponent fit in
    // this suite sees exact zeros and reports an analysis failure.
    let out = run(&[
        "verify", "--suite", "theorem-vi", "--field", "R", "--p", "0", "--q", "2", "--probe",
        "bump", "--radius", "1",
    ]);
    assert_eq!(code(&out), 1, "stderr: {}", stderr(&out));
    assert!(stderr(&out).starts_with("error:"));
}

#[test]
fn params_prints_the_contract_table() {
    let out = run(&["params", "--field", "C", "--p", "0", "--q", "4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("noncuspidal  {3, 1}"), "got:\n{text}");
    assert!(text.contains("L(xi)        xi^3 - 10 xi^2 + 9 xi"), "got:\n{text}");

    let flat = run(&["params", "--field", "R", "--p", "1", "--q", "1"]);
    assert_eq!(code(&flat), 0);
    assert!(
        stdout(&flat).contains("no expansion regime (p \u{2265} q); support theorem applies"),
        "got:\n{}",
        stdout(&flat)
    );
}

#[test]
fn sweep_covers_the_default_spaces() {
    let dir = scratch("sweep");
    let out = run(&["sweep", "--suite", "lemmaG", "--output", dir.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("space,suites,checks,failed,status"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5, "got:\n{text}");
    for row in &rows {
        let cols: Vec<&str> = row.rsplitn(5, ',').collect();
        let status = cols[0];
        let space = cols[4];
        if space == "\"(R,1,1)\"" {
            assert_eq!(status, "skip", "no expansion regime on {space}");
        } else {
            assert_eq!(status, "ok", "row {row}");
        }
    }
    assert_eq!(
        std::fs::read_to_string(dir.join("summary.csv")).expect("summary"),
        text
    );
    for stem in ["R_0_2", "R_0_4", "R_1_1", "R_0_5", "C_0_2"] {
        let payload = std::fs::read_to_string(dir.join(format!("{stem}.json")))
            .unwrap_or_else(|_| panic!("{stem}.json missing"));
        let v: serde_json::Value = serde_json::from_str(&payload).expect("valid json");
        assert!(v["reports"].is_array());
        assert!(v["config"].is_object());
    }
}

#[test]
fn sweep_with_empty_space_list_is_a_no_op() {
    let out = run(&["sweep", "--spaces", ""]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "space,suites,checks,failed,status\n");
}

#[test]
fn sweep_dedupes_repeated_spaces() {
    let out = run(&["sweep", "--suite", "lemmaG", "--spaces", "R,0,2;R,0,2"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 2, "one header + one row:\n{text}");
    assert!(stderr(&out).contains("duplicate"), "got: {}", stderr(&out));
}

#[test]
fn config_file_sets_the_grid_and_flags_override_it() {
    let dir = scratch("config");
    let cfg = dir.join("run.conf");
    std::fs::write(
        &cfg,
        "[grid]\ns_min = -1\ns_max = 1\nstep = 0.5\n\n[space]\nfield = R\np = 0\nq = 2\n",
    )
    .unwrap();

    let from_file = run(&["transform", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&from_file), 0, "stderr: {}", stderr(&from_file));
    assert_eq!(parse_rows(&stdout(&from_file)).len(), 5);

    let overridden = run(&[
        "transform", "--config", cfg.to_str().unwrap(), "--step", "0.25",
    ]);
    assert_eq!(code(&overridden), 0);
    assert_eq!(parse_rows(&stdout(&overridden)).len(), 9);
}

#[test]
fn unknown_probe_is_a_usage_error() {
    let out = run(&["transform", "--probe", "wavelet"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("probe"));
}
