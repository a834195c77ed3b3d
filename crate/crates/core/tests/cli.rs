use std::process::{Command, Output};

use semistable_replay::dataset::*;
use serde_json::Value;

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(args)
        .output()
        .expect("verify runs")
}

fn write_data(dir: &std::path::Path) {
    for (name, body) in [
        (ODLYZKO_FILE, SHIPPED_ODLYZKO),
        (FIELDS_FILE, SHIPPED_FIELDS),
        (RAYCLASS_FILE, SHIPPED_RAYCLASS),
        (UNIT_IMAGES_FILE, SHIPPED_UNIT_IMAGES),
        (SPLITTING_FILE, SHIPPED_SPLITTING),
    ] {
        std::fs::write(dir.join(name), body).unwrap();
    }
}

#[test]
fn n10_passes_with_exit_zero() {
    let out = verify(&["--case", "n10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("overall: PASS"));
    assert!(text.contains("cite: "));
    assert!(text.contains("[TRUSTED] rayclass-k10"));
}

#[test]
fn n6_reports_the_order_125_failure() {
    let out = verify(&["--case", "n6", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["case"], "n6");
    assert_eq!(v["overall"], "Fail");
    let failing: Vec<&str> = v["steps"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| s["status"] == "Fail")
        .map(|s| s["id"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["order125-surjectors"]);
    for s in v["steps"].as_array().unwrap() {
        for key in ["id", "status", "citation", "detail"] {
            assert!(s.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    for format in ["text", "json"] {
        let a = verify(&["--case", "all", "--format", format, "--seed", "11"]);
        let b = verify(&["--case", "all", "--format", format, "--seed", "11"]);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn configuration_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().to_str().unwrap();
    assert_eq!(verify(&["--data-dir", empty]).status.code(), Some(2));
    assert_eq!(
        verify(&["--odlyzko", "/nonexistent/table.csv"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(verify(&["--precision", "0"]).status.code(), Some(2));

    write_data(dir.path());
    std::fs::write(dir.path().join(RAYCLASS_FILE), "[]").unwrap();
    let out = verify(&["--data-dir", empty]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rayclass"));
}

#[test]
fn data_dir_with_shipped_copy_matches_builtin() {
    let dir = tempfile::tempdir().unwrap();
    write_data(dir.path());
    let a = verify(&["--case", "n10", "--format", "json"]);
    let b = verify(&[
        "--case",
        "n10",
        "--format",
        "json",
        "--data-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(b.status.code(), Some(0));
}

#[test]
fn tampered_odlyzko_table_fails_degree_step() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("t.csv");
    std::fs::write(&table, SHIPPED_ODLYZKO.replace("2400,31.645", "2400,31.0")).unwrap();
    let out = verify(&[
        "--case",
        "n6",
        "--format",
        "json",
        "--odlyzko",
        table.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let status = |id: &str| {
        v["steps"]
            .as_array()
            .unwrap()
            .iter()
            .find(|s| s["id"] == id)
            .map(|s| s["status"].clone())
            .unwrap()
    };
    assert_eq!(status("fontaine-n6-degree"), "Fail");
    assert_eq!(status("fontaine-n6"), "Fail");
}

#[test]
fn exported_script_runs_and_can_be_edited() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("n10.json");
    let p = path.to_str().unwrap();
    assert_eq!(
        verify(&["--case", "n10", "--export", p]).status.code(),
        Some(0)
    );
    assert_eq!(verify(&["--script", p]).status.code(), Some(0));

    let mut script: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let step = script["steps"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|s| s["id"] == "tame-n10")
        .unwrap();
    step["expect"] = Value::from("Greater");
    std::fs::write(&path, serde_json::to_string(&script).unwrap()).unwrap();
    assert_eq!(verify(&["--script", p]).status.code(), Some(1));

    script["steps"][0]["lhs"] = serde_json::json!({"field_root_disc": "no such field"});
    script["steps"][0]["kind"] = Value::from("CompareBound");
    script["steps"][0]["rhs"] = serde_json::json!({"odlyzko": 280});
    script["steps"][0]["expect"] = Value::from("Less");
    std::fs::write(&path, serde_json::to_string(&script).unwrap()).unwrap();
    assert_eq!(verify(&["--script", p]).status.code(), Some(2));
}
