use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn realcover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realcover")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("realcover-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const NO_G13: &str = r#"{"g":4,"s":0,"a":1,"target":"P1","k":3,"deg":[]}"#;

#[test]
fn admissible_negative_exits_2() {
    let out = realcover(&["admissible", NO_G13]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{\"admissible\":false,\"reason\":\"parity\"}\n");

    let out = realcover(&["admissible", r#"{"g":6,"s":3,"a":0,"target":"P1","k":3,"deg":[1,1,1]}"#]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), serde_json::json!({"admissible": true}));
}

#[test]
fn malformed_input_exits_1_with_path() {
    let out = realcover(&["plan", r#"{"g":4,"s":1,"a":0,"target":"P1","k":"three","deg":[3]}"#]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("k"));

    let out = realcover(&["verify", "/nonexistent/plan.json", NO_G13]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn plan_then_verify_round_trip() {
    let mut checked = 0;
    let scan = json(&realcover(&["enumerate", "5", "5"]));
    for entry in scan.as_array().unwrap() {
        if entry["plan"].is_null() {
            continue;
        }
        let spec = entry["spec"].to_string();
        let out = realcover(&["plan", &spec]);
        assert_eq!(out.status.code(), Some(0), "{spec}");
        let path = scratch(&format!("plan-{checked}.json"));
        std::fs::write(&path, &out.stdout).unwrap();
        let out = realcover(&["verify", path.to_str().unwrap(), &spec]);
        assert_eq!(out.status.code(), Some(0), "{spec}");
        assert_eq!(json(&out), serde_json::json!({"verified": true}));
        checked += 1;
        if checked >= 40 {
            break;
        }
    }
    assert!(checked > 0);
}

#[test]
fn verify_reports_a_trail_on_mismatch() {
    let spec = r#"{"g":4,"s":1,"a":0,"target":"P1","k":3,"deg":[3]}"#;
    let out = realcover(&["plan", spec]);
    let path = scratch("case1.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let other = r#"{"g":4,"s":1,"a":0,"target":"P1","k":5,"deg":[5]}"#;
    let out = realcover(&["verify", path.to_str().unwrap(), other]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["verified"], false);
    assert!(!v["trail"].as_array().unwrap().is_empty());
}

#[test]
fn infeasible_plan_exits_2() {
    let out = realcover(&["plan", NO_G13]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out), serde_json::json!({"infeasible": "parity"}));
}

#[test]
fn enumerate_is_byte_identical() {
    let a = realcover(&["enumerate", "4", "4"]);
    let b = realcover(&["enumerate", "4", "4"]);
    let c = Command::new(env!("CARGO_BIN_EXE_realcover"))
        .args(["enumerate", "4", "4"])
        .env("REALCOVER_SCAN_WORKERS", "4")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn realize_json_and_csv() {
    let spec = r#"{"g":4,"s":1,"a":0,"target":"P1","k":3,"deg":[3]}"#;
    let path = scratch("realize.json");
    std::fs::write(&path, realcover(&["plan", spec]).stdout).unwrap();

    let out = realcover(&["realize", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["k"], 3);

    let out = realcover(&["realize", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,fiber_count"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.len() >= 100);
    assert!(rows.iter().all(|r| r.ends_with(",3")));
}

#[test]
fn covnum_and_calculators() {
    let out = realcover(&["covnum", r#"{"g":2,"s":3,"a":0,"kcov":3}"#]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["covering_number"], 3);

    let out = realcover(&["covnum", r#"{"g":2,"s":3,"a":0,"kcov":4}"#]);
    assert_eq!(out.status.code(), Some(2));

    let out = realcover(&["rho", "4", "3"]);
    assert_eq!(json(&out)["rho"], 0);

    let out = realcover(&["dims", "4", "3"]);
    assert_eq!(json(&out), serde_json::json!({"hurwitz": 12, "moduli": 9, "image_bound": 9}));

    let out = realcover(&["facts", "4", "0", "1", "3"]);
    assert_eq!(json(&out), serde_json::json!({"fact": "no_real_pencil"}));

    let out = realcover(&["facts", "4", "0"]);
    assert_eq!(out.status.code(), Some(1));
}
