use std::path::PathBuf;
use std::process::{Command, Output};

use kacmoody::super_affine::{catalog, random_closed_candidate, SupportCandidate};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn kacmoody(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kacmoody"))
        .args(args)
        .env_remove("KACMOODY_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kacmoody-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_support(name: &str, candidate: &SupportCandidate) -> PathBuf {
    let path = scratch(name).join("support.json");
    std::fs::write(&path, serde_json::to_string(candidate).unwrap()).unwrap();
    path
}

#[test]
fn minimal_d4_lists_four_classes() {
    let out = kacmoody(&["minimal", "--type", "D4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["format"], "kacmoody/1");
    assert_eq!(v["command"], "minimal");
    assert_eq!(v["cartan_determinant"], 4);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for r in rows {
        let value = r["highest_coroot_value"].as_str().unwrap();
        assert!(value == "0" || value == "1");
    }
}

#[test]
fn malformed_input_exits_with_two() {
    let out = kacmoody(&["minimal", "--type", "Q3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 0"));

    let out = kacmoody(&["weights", "--type", "A2", "--highest", "L0 + w7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 6"));

    let out = kacmoody(&["obstruct", "--spec", "B(1,", "--support", "/nonexistent.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn precondition_errors_exit_with_two() {
    // not dominant: α0-value of 2ω1 at level 1 is negative
    let out = kacmoody(&["weights", "--type", "A1", "--highest", "L0 + 2w1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not dominant"));
    let out = kacmoody(&["mu0", "--type", "A1", "--level", "1", "--s", "1/3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn weights_report_contents() {
    let out = kacmoody(&["weights", "--type", "A1", "--highest", "L0", "--depth", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["weyl_closed"], true);
    assert_eq!(v["classes"], 1);
    // V(Λ0) of A1 at depth ≤ 2: 1 + 3 + 3 weights, ±2α1 first appears at depth 4
    assert_eq!(v["count"], 7);
    let weights = v["support"]["weights"].as_array().unwrap();
    let top = &weights[0];
    assert_eq!(top["weight"]["level"], "1");
    assert_eq!(top["multiplicity"], 1);
}

#[test]
fn mu0_report_fields() {
    let out = kacmoody(&[
        "mu0",
        "--type",
        "A2",
        "--highest",
        "2L0 + w1 + w2 + 1/2 delta",
        "--s",
        "-3/2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["member"], true);
    assert_eq!(v["s"], "-3/2");
    assert_eq!(v["mu0"]["finite"], serde_json::json!(["0", "0"]));
}

#[test]
fn casimir_audit_rows_are_positive() {
    let out = kacmoody(&["casimir-audit", "--type", "A2", "--level", "1", "--depth", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["holds"], true);
    for row in v["rows"].as_array().unwrap() {
        assert!(!row["value"].as_str().unwrap().starts_with('-'));
        assert_ne!(row["value"], "0");
    }
}

#[test]
fn obstruct_emits_json_lines() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let c = random_closed_candidate(&catalog("B(1,1)").unwrap(), 1, 2, &mut rng).unwrap();
    let path = write_support("lines", &c);
    let out = kacmoody(&["obstruct", "--spec", "B(1,1)", "--support", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(lines.len() >= 3);
    assert_eq!(lines[0]["kind"], "header");
    assert_eq!(lines[0]["format"], "kacmoody/1");
    assert!(lines[1..lines.len() - 1].iter().all(|l| l["kind"] == "step"));
    let summary = lines.last().unwrap();
    assert_eq!(summary["kind"], "summary");
    assert_eq!(summary["outcome"], "contradiction");
    assert_eq!(summary["rule"], "heisenberg");
    assert_eq!(summary["checker"]["valid"], true);
}

#[test]
fn obstruct_empty_support_exits_with_three() {
    let c = SupportCandidate {
        spec: catalog("B(1,1)").unwrap(),
        level: 1,
        depth: 2,
        weights: Default::default(),
    };
    let path = write_support("empty", &c);
    let out = kacmoody(&["obstruct", "--support", path.to_str().unwrap(), "--emit", "table"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stdout).contains("ConsistentAtDepth"));
}

#[test]
fn obstruct_rejects_mismatched_spec() {
    let c = SupportCandidate {
        spec: catalog("B(1,1)").unwrap(),
        level: 1,
        depth: 2,
        weights: Default::default(),
    };
    let path = write_support("mismatch", &c);
    let out = kacmoody(&["obstruct", "--spec", "A(1,1)", "--support", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_directory_from_environment() {
    let dir = scratch("outdir");
    let out = Command::new(env!("CARGO_BIN_EXE_kacmoody"))
        .args(["minimal", "--type", "B3"])
        .env("KACMOODY_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("minimal.json")).unwrap()).unwrap();
    assert_eq!(written["algebra"], "B3");

    let out = Command::new(env!("CARGO_BIN_EXE_kacmoody"))
        .args(["minimal", "--type", "B3", "--emit", "table", "--output", "b3.txt"])
        .env("KACMOODY_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_to_string(dir.join("b3.txt"))
        .unwrap()
        .contains("B3: 2 classes"));
}

#[test]
fn verify_all_is_byte_stable() {
    let args = ["verify-all", "--max-rank", "2", "--depth", "1", "--samples", "3"];
    let a = kacmoody(&args);
    let b = kacmoody(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["passed"], true);
    let ids: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(
        ids,
        [
            "minimal-coroot-bound",
            "mu0-membership",
            "casimir-pairs",
            "delta-finiteness",
            "obstruction"
        ]
    );
    assert!(v["checks"][0].get("wall_ms").is_none());

    let timed = kacmoody(&[
        "verify-all",
        "--max-rank",
        "1",
        "--depth",
        "1",
        "--samples",
        "1",
        "--timings",
    ]);
    assert!(json(&timed)["checks"][0].get("wall_ms").is_some());
}
