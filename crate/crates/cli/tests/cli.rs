//! End-to-end tests of the `qracah` binary: exit-code contract, JSON
//! determinism, seed precedence, and the fixture gate.

use assert_cmd::Command;
use predicates::prelude::*;
use tempfile::tempdir;

fn qracah() -> Command {
    let mut cmd = Command::cargo_bin("qracah").unwrap();
    cmd.env_remove("QTET_SEED");
    cmd
}

fn write_d1_fixture(dir: &std::path::Path) -> std::path::PathBuf {
    let path = dir.join("d1.json");
    qracah()
        .args([
            "fixture", "--q", "2", "--a", "3", "--b", "5", "--d", "1", "--phi", "1",
        ])
        .args(["--out", path.to_str().unwrap()])
        .assert()
        .success();
    path
}

#[test]
fn fixture_then_verify_and_suite_succeed() {
    let dir = tempdir().unwrap();
    let path = write_d1_fixture(dir.path());
    qracah().arg("verify").arg(&path).assert().success();
    qracah()
        .arg("suite")
        .arg(&path)
        .assert()
        .success()
        .stdout(predicate::str::contains("0 FAIL"));
}

#[test]
fn zero_phi_is_rejected_naming_axiom_iv() {
    qracah()
        .args([
            "fixture", "--q", "2", "--a", "3", "--b", "5", "--d", "1", "--phi", "0",
        ])
        .assert()
        .code(1)
        .stderr(predicate::str::contains("axiom iv"));
}

#[test]
fn d2_fixture_via_solver() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("d2.json");
    qracah()
        .args([
            "fixture", "--q", "2", "--a", "3", "--b", "5", "--d", "2", "--c", "2",
        ])
        .args(["--out", path.to_str().unwrap()])
        .assert()
        .success();
    qracah().arg("suite").arg(&path).assert().success();
}

#[test]
fn perturbed_fixture_fails_with_named_ids() {
    let dir = tempdir().unwrap();
    let path = write_d1_fixture(dir.path());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
    // Bump A*[0][1] from 1 to 2: still a valid TD pair in the abstract, but
    // inconsistent with the stored (params, phi), so the gate must refuse it.
    value["Astar"][0][1] = serde_json::json!("2");
    std::fs::write(&path, serde_json::to_string(&value).unwrap()).unwrap();

    qracah()
        .arg("suite")
        .arg(&path)
        .assert()
        .code(1)
        .stderr(predicate::str::contains("fixture-Astar"));

    // The verify command reports the failing ids in JSON and exits 1.
    let assert = qracah()
        .args(["verify", "--format", "json"])
        .arg(&path)
        .assert()
        .code(1);
    let report: serde_json::Value = serde_json::from_slice(&assert.get_output().stdout).unwrap();
    let failing: Vec<&str> = report["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["status"] == "FAIL")
        .map(|e| e["id"].as_str().unwrap())
        .collect();
    assert!(
        failing.contains(&"fixture-Astar"),
        "failing ids: {failing:?}"
    );
}

#[test]
fn filter_restricts_suite_entries() {
    let dir = tempdir().unwrap();
    let path = write_d1_fixture(dir.path());
    let assert = qracah()
        .args(["suite", "--filter", "C39", "--format", "json"])
        .arg(&path)
        .assert()
        .success();
    let report: serde_json::Value = serde_json::from_slice(&assert.get_output().stdout).unwrap();
    let entries = report["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["id"], "C39");
}

#[test]
fn json_reports_are_byte_identical() {
    let dir = tempdir().unwrap();
    let path = write_d1_fixture(dir.path());
    let run = || {
        qracah()
            .args(["suite", "--format", "json", "--seed", "5"])
            .arg(&path)
            .assert()
            .success()
            .get_output()
            .stdout
            .clone()
    };
    assert_eq!(run(), run());
}

#[test]
fn seed_precedence_flag_env_default() {
    let dir = tempdir().unwrap();
    let path = write_d1_fixture(dir.path());
    let seed_of = |cmd: &mut Command, extra: &[&str]| -> u64 {
        let assert = cmd
            .args(["suite", "--format", "json"])
            .args(extra)
            .arg(&path)
            .assert()
            .success();
        let report: serde_json::Value =
            serde_json::from_slice(&assert.get_output().stdout).unwrap();
        report["seed"].as_u64().unwrap()
    };
    assert_eq!(seed_of(&mut qracah(), &[]), qracah_core::DEFAULT_SEED);
    assert_eq!(seed_of(qracah().env("QTET_SEED", "7"), &[]), 7);
    assert_eq!(seed_of(qracah().env("QTET_SEED", "7"), &["--seed", "9"]), 9);
}

#[test]
fn qtet_emits_both_modules_with_matching_upsilon() {
    let dir = tempdir().unwrap();
    let path = write_d1_fixture(dir.path());
    let assert = qracah()
        .args(["qtet", "--format", "json"])
        .arg(&path)
        .assert()
        .success();
    let value: serde_json::Value = serde_json::from_slice(&assert.get_output().stdout).unwrap();
    assert_eq!(value["modules"]["one"]["t"], "3");
    assert_eq!(value["modules"]["two"]["t"], "1/3");
    // Both modules carry the same Upsilon (= Lambda) dump.
    assert_eq!(
        value["modules"]["one"]["upsilon"],
        value["modules"]["two"]["upsilon"]
    );
    assert!(value["report"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .all(|e| e["status"] == "PASS"));
}

#[test]
fn explore_probes_never_gate() {
    let dir = tempdir().unwrap();
    let path = write_d1_fixture(dir.path());
    let assert = qracah()
        .args(["explore", "--format", "json"])
        .arg(&path)
        .assert()
        .success();
    let value: serde_json::Value = serde_json::from_slice(&assert.get_output().stdout).unwrap();
    let entries = value["report"]["entries"].as_array().unwrap();
    let c41: Vec<&str> = entries
        .iter()
        .map(|e| e["id"].as_str().unwrap())
        .filter(|id| id.starts_with("C41"))
        .collect();
    assert_eq!(c41, ["C41.1", "C41.2", "C41.3", "C41.4", "C41.5"]);
    assert!(entries.iter().all(|e| e["status"] == "PROBE"));
    assert!(value["minimal_polynomials"]["K"].is_array());
}

#[test]
fn unreadable_fixture_is_a_usage_error() {
    qracah()
        .args(["suite", "/nonexistent/fixture.json"])
        .assert()
        .code(2);
}
