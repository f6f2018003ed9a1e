use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn design() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/qubit_v1.json")
}

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qubit-design"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn derive_writes_report_with_summary() {
    let dir = tempfile::tempdir().unwrap();
    let config = design();
    let out = run(dir.path(), &["derive", "--config", config.to_str().unwrap(), "--out", "r.json"]);
    assert_eq!(out.status.code(), Some(0));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("warning:"), "dispersive warning expected: {stderr}");

    let text = std::fs::read_to_string(dir.path().join("r.json")).unwrap();
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(json["summary"].is_array());
    assert!(json["provenance"]["input_sha256"].as_str().unwrap().len() == 64);
}

#[test]
fn s21_both_writes_two_csvs() {
    let dir = tempfile::tempdir().unwrap();
    let config = design();
    let out = run(
        dir.path(),
        &["s21", "--config", config.to_str().unwrap(), "--state", "both", "--span-hz", "20e6", "--points", "401", "--out", "s.csv"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    for name in ["s_ground.csv", "s_excited.csv"] {
        let text = std::fs::read_to_string(dir.path().join(name)).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("frequency_hz,re_s21,im_s21,abs_s21"));
        assert_eq!(lines.count(), 401);
    }
}

#[test]
fn sweep_header_lists_requested_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let config = design();
    let out = run(
        dir.path(),
        &[
            "sweep", "--config", config.to_str().unwrap(), "--param", "l_j", "--from", "9e-9", "--to", "12e-9",
            "--steps", "4", "--emit", "f_01,chi", "--out", "w.csv",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("w.csv")).unwrap();
    assert_eq!(text.lines().next(), Some("l_j,f_01,chi,status"));
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",ok")));
}

#[test]
fn invalid_config_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(design()).unwrap().replace("\"c_s_farad\": 98.19e-15", "\"c_s_farad\": -1.0");
    assert!(text.contains("-1.0"), "fixture edit did not apply");
    std::fs::write(dir.path().join("bad.json"), text).unwrap();
    let out = run(dir.path(), &["derive", "--config", "bad.json", "--out", "r.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!dir.path().join("r.json").exists());

    let out = run(dir.path(), &["derive", "--config", "missing.json", "--out", "r.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unbracketed_tune_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let config = design();
    let out = run(
        dir.path(),
        &[
            "tune", "--config", config.to_str().unwrap(), "--vary", "l_j", "--target", "f_01=4.55e9", "--bracket",
            "20e-9,30e-9", "--out", "t.json",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
}
