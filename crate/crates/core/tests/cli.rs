//! Runs the `jester` binary on shipped inputs and checks exit codes and reports.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

struct Run {
    code: i32,
    report: Value,
    stderr: String,
}

fn jester(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_jester")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exited normally"),
        report: serde_json::from_slice(&out.stdout).expect("stdout is a JSON report"),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

fn p(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn dunce_hat_is_not_collapsible() {
    let r = jester(&["collapse", &p("dunce_hat.json")]);
    assert_eq!(r.code, 1, "{}", r.stderr);
    assert_eq!(r.report["result"]["verdict"], "not_collapsible");
    assert_eq!(r.report["result"]["reason"], "no free face");
    assert!(r.stderr.contains("no free face"));
}

#[test]
fn jester_split_premise() {
    let r = jester(&["split", &p("jester_hat.json"), "--a", &p("jester_A.ids"), "--b", &p("jester_B.ids")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let res = &r.report["result"];
    assert_eq!(res["union_ok"], true);
    for part in ["a", "b", "c"] {
        assert_eq!(res[part]["verdict"], "collapsible", "{part}");
        assert_eq!(res[part]["euler_characteristic"], 1, "{part}");
    }
    assert_eq!(res["c"]["f_vector"], serde_json::json!([9, 8]));
}

#[test]
fn split_with_a_short_part_fails() {
    let ids = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(ids.path(), "0 1 2").unwrap();
    let a = ids.path().to_string_lossy().into_owned();
    let r = jester(&["split", &p("jester_hat.json"), "--a", &a, "--b", &p("jester_B.ids")]);
    assert_eq!(r.code, 1);
    assert_eq!(r.report["result"]["union_ok"], false);
}

#[test]
fn proiso_z5_is_distinguished() {
    let r = jester(&["proiso", &p("z2_z5.seq.json"), &p("z2_no_z5.seq.json")]);
    assert_eq!(r.code, 1, "{}", r.stderr);
    let res = &r.report["result"];
    assert_eq!(res["decision"], false);
    assert_eq!(res["certificate"]["kind"], "distinguishing");
    assert_eq!(res["certificate"]["class"]["labels_a"], serde_json::json!(["Z5"]));
    assert_eq!(res["refutation"]["outcome"], "refuted");
}

#[test]
fn proiso_alternating_orders_agree() {
    let r = jester(&["proiso", &p("z2_z3.seq.json"), &p("z3_z2.seq.json"), "--refute-depth", "2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.report["result"]["decision"], true);
    assert_eq!(r.report["settings"]["refute_depth"], 2);
}

#[test]
fn mazur_defaults_certify_nontriviality() {
    let r = jester(&["mazur"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let res = &r.report["result"];
    assert_eq!(res["verdict"], "nontrivial");
    let st = &res["stages"];
    assert_eq!(st["abelianization"]["trivial"], true);
    assert_eq!(st["wirtinger"]["generators"], 9);
    assert_eq!(st["wirtinger"]["relators"], 9);
    let rels = st["extend_representation"]["relators"].as_array().unwrap();
    assert_eq!(rels.len(), 11);
    for x in rels.iter().chain(st["rep_verify"]["relators"].as_array().unwrap()) {
        assert!(x["residual"].as_f64().unwrap() < 1e-9, "{x}");
    }
    assert!(st["nontriviality"]["distance_from_identity"].as_f64().unwrap() > 3.2);
    assert_eq!(r.report["inputs"].as_array().unwrap().len(), 5);
}

#[test]
fn mazur_on_the_unknot_stops_at_abelianization() {
    let r = jester(&["mazur", "--diagram", &p("unknot.json")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let st = &r.report["result"]["stages"];
    assert_eq!(st["abelianization"]["invariants"], serde_json::json!([0]));
    assert!(st["representation"]["skipped"].is_string());
    assert!(st.get("rep_verify").is_none());
}

#[test]
fn corrupted_diagram_reports_its_stage() {
    let f = tempfile::NamedTempFile::new().unwrap();
    let text = std::fs::read_to_string(data("mazur_link.json")).unwrap().replacen("\"x9\"", "\"x99\"", 1);
    std::fs::write(f.path(), text).unwrap();
    let path = f.path().to_string_lossy().into_owned();
    let r = jester(&["mazur", "--diagram", &path]);
    assert_eq!(r.code, 2, "{}", r.stderr);
    assert_eq!(r.report["error"]["stage"], "validate_diagram");
    assert!(r.report.get("result").is_none());
}

#[test]
fn missing_file_is_unchecked() {
    let r = jester(&["collapse", "/nonexistent/k.json"]);
    assert_eq!(r.code, 2);
    assert!(r.report["error"]["message"].as_str().unwrap().contains("/nonexistent/k.json"));
}

#[test]
fn reports_are_deterministic_and_hash_their_inputs() {
    let args = ["--seed", "7", "collapse", &p("jester_hat.json")];
    let a = jester(&args);
    let b = jester(&args);
    assert_eq!(a.report, b.report);
    assert_eq!(a.report["settings"]["seed"], 7);
    let inputs = a.report["inputs"].as_array().unwrap();
    assert_eq!(inputs.len(), 1);
    assert_eq!(inputs[0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn config_file_and_output_flag() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"tol": 1e-12, "seed": 3}"#).unwrap();
    let out = dir.path().join("report.json");
    let status = Command::new(env!("CARGO_BIN_EXE_jester"))
        .args(["--config", cfg.to_str().unwrap(), "--tol", "1e-8", "--output", out.to_str().unwrap()])
        .args(["rep", "verify", "--presentation", &p("triangle_group.json"), "--assignment", &p("triangle_rep.json")])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(report["settings"]["tol"], 1e-8);
    assert_eq!(report["settings"]["seed"], 3);
}

#[test]
fn bad_config_key_is_rejected() {
    let f = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(f.path(), r#"{"tolerance": 1}"#).unwrap();
    let r = jester(&["--config", f.path().to_str().unwrap(), "polygon", &p("dunce_hat.polygon.json")]);
    assert_eq!(r.code, 2);
}
