//! CLI behavior: exit codes, formats, metadata, file output.

use std::process::Command;

fn pspin(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_pspin"))
        .args(args)
        .output()
        .expect("spawn pspin")
}

#[test]
fn bad_interval_syntax_is_usage_error() {
    let out = pspin(&["verify-identity", "--b", "not-an-interval", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(2), "bad B syntax must exit 2");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("lo..hi") || stderr.contains("interval"), "{stderr}");
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = pspin(&["curves", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thresholds_reject_p2_with_message() {
    let out = pspin(&["thresholds", "--p", "2,3", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("p >= 3"));
}

#[test]
fn thresholds_succeed_and_record_metadata() {
    let out = pspin(&["thresholds", "--p", "3", "--k-max", "1", "--seed", "77"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("# seed = 77"));
    assert!(stdout.contains("# tool = pspin"));
    assert!(stdout.contains("e_infinity"));
    // E_k strictly decreasing along the row
    let data: Vec<&str> = stdout.lines().filter(|l| !l.starts_with('#')).collect();
    let fields: Vec<f64> = data[1]
        .split(',')
        .skip(2)
        .take(2)
        .map(|v| v.parse().unwrap())
        .collect();
    assert!(fields[0] > fields[1], "E_0 > E_1");
}

#[test]
fn missing_seed_is_generated_and_printed() {
    let out = pspin(&["curves", "--p", "3", "--k", "", "--points", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("generated seed"));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("# seed = "));
}

#[test]
fn curves_empty_k_emits_only_total() {
    let out = pspin(&["curves", "--p", "3", "--k", "", "--points", "3", "--seed", "1"]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    let rows: Vec<&str> = stdout.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.contains(",total,")));
}

#[test]
fn json_format_carries_meta_and_rows() {
    let out = pspin(&[
        "curves", "--p", "3", "--k", "0", "--points", "2", "--seed", "4", "--format", "json",
    ]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid json");
    assert_eq!(doc["meta"]["seed"], "4");
    assert_eq!(doc["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn output_file_is_written_and_io_errors_carry_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curves.csv");
    let out = pspin(&[
        "curves", "--p", "3", "--points", "2", "--seed", "1", "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.starts_with("# tool = pspin"));

    let bad = dir.path().join("no-such-dir").join("x.csv");
    let out = pspin(&[
        "curves", "--p", "3", "--points", "2", "--seed", "1", "--output",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no-such-dir"));
}

#[test]
fn verify_identity_exit_zero_iff_z_below_three() {
    // healthy run at small scale: p=2 is exact, must pass
    let out = pspin(&[
        "verify-identity", "--p", "2", "--n", "3", "--n-samples", "4000", "--n-instances",
        "25", "--seed", "3", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["lhs"]["mean"], 6.0);
    assert_eq!(doc["pass"], true);
}

#[test]
fn tap_rejects_u_above_edge() {
    let out = pspin(&["tap", "--p", "3", "--beta", "1.0", "--u-min", "-2", "--u-max", "0", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("E_inf"));
}

#[test]
fn goe_ldp_rate_columns_scale_with_k() {
    let out = pspin(&[
        "goe-ldp", "--n-list", "10", "--k", "3", "--x-min", "1.6", "--x-max", "1.8",
        "--points", "2", "--n-samples", "200", "--seed", "2", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for row in doc["rows"].as_array().unwrap() {
        let ik: f64 = row["rate_i_k"].as_str().unwrap().parse().unwrap();
        let i1: f64 = row["rate_i_1"].as_str().unwrap().parse().unwrap();
        assert_eq!(ik, 3.0 * i1);
    }
}

#[test]
fn enumerate_json_schema_fields() {
    let out = pspin(&["enumerate", "--p", "2", "--n", "3", "--seed", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for field in ["seed", "p", "N", "points", "counts", "morse_ok", "rejected"] {
        assert!(doc.get(field).is_some(), "missing field {field}");
    }
    assert_eq!(doc["points"].as_array().unwrap().len(), 6);
    let pt = &doc["points"][0];
    for field in ["position", "normalized_energy", "index", "hessian_spectrum", "residual"] {
        assert!(pt.get(field).is_some(), "missing point field {field}");
    }
}
