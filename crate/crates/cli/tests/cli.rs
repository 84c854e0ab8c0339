use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn splitring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splitring")).args(args).env_remove("SPLITRING_CAP").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = splitring(&all);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (v, o.status.code().unwrap())
}

#[test]
fn generic_quartic_relations() {
    let o = splitring(&["relations", "--ring", "PolyCoef:4:Z", "--a", "0,0,0,0", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for line in [
        "f1 = X1^4 - a1*X1^3 + a2*X1^2 - a3*X1 + a4",
        "f2 = X1^3 + X1^2*X2 + X1*X2^2 + X2^3 - a1*(X1^2 + X1*X2 + X2^2) + a2*(X1 + X2) - a3",
        "f3 = X1^2 + X1*X2 + X1*X3 + X2^2 + X2*X3 + X3^2 - a1*(X1 + X2 + X3) + a2",
        "f4 = X1 + X2 + X3 + X4 - a1",
    ] {
        assert!(out.contains(line), "missing `{line}` in\n{out}");
    }
}

#[test]
fn linear_relation_is_f_itself() {
    let (v, code) = json(&["relations", "--f", "5,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["relations"][0]["text"], "X1 + 5");
    assert_eq!(v["recursive_equals_closed"], true);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["relations", "--ring", "Zmod:q", "--f", "1,1"][..],
        &["matrices", "--f", "1,2"],
        &["matrices", "--b", "1,2", "--n", "3"],
        &["matrices", "--f", "1,1", "--a", "1"],
        &["noncomm", "--ring", "Z", "--f", "1,1"],
        &["bogus"],
    ] {
        let o = splitring(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn parse_errors_point_at_the_position() {
    let o = splitring(&["relations", "--ring", "Mat:2:Zmod:q", "--f", "1,1"]);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("position 11"), "{err}");
}

#[test]
fn quadratic_matrices() {
    let (v, code) = json(&["matrices", "--f", "2,-3,1", "--ring", "Z"]);
    assert_eq!(code, 0);
    let mats = &v["report"]["matrices"];
    assert_eq!(mats[0]["rows"], serde_json::json!([["0", "-2"], ["1", "3"]]));
    assert_eq!(mats[1]["rows"], serde_json::json!([["3", "2"], ["-1", "0"]]));
    assert!(v["report"]["checks"].as_object().unwrap().values().all(|c| c["status"] == "pass"));
}

#[test]
fn generic_cubic_gives_six_by_six() {
    let (v, code) = json(&["matrices", "--ring", "PolyCoef:3:Z", "--n", "3"]);
    assert_eq!(code, 0);
    for m in v["report"]["matrices"].as_array().unwrap() {
        assert_eq!(m["size"], 6);
    }
    // A1 is three copies of the companion matrix of f
    let rows = &v["report"]["matrices"][0]["rows"];
    assert_eq!(rows[1][0], "1");
    assert_eq!(rows[0][2], "-b0");
    assert_eq!(rows[2][2], "-b2");
}

#[test]
fn degree_cap_and_overrides() {
    let o = splitring(&["matrices", "--n", "7", "--ring", "Zmod:2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));

    let with_env = |cap: &str, extra: &[&str]| {
        let mut args = vec!["automorphisms", "--n", "3"];
        args.extend(extra);
        Command::new(env!("CARGO_BIN_EXE_splitring")).args(&args).env("SPLITRING_CAP", cap).output().unwrap()
    };
    assert_eq!(with_env("2", &[]).status.code(), Some(2));
    assert_eq!(with_env("3", &[]).status.code(), Some(0));
    assert_eq!(with_env("2", &["--cap-override", "3"]).status.code(), Some(0));
}

#[test]
fn json_round_trip_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    let p = path.to_str().unwrap();
    let o = splitring(&["matrices", "--ring", "Zmod:7", "--a", "1,2,3", "--format", "json", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let exported: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let (verified, code) = json(&["verify", p]);
    assert_eq!(code, 0);
    assert_eq!(verified["report"], exported["report"]);
    assert_eq!(verified["input"], exported["input"]);
}

fn tamper(path: &Path) {
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    doc["report"]["matrices"][1]["rows"][0][0] = Value::from("5");
    std::fs::write(path, doc.to_string()).unwrap();
}

#[test]
fn verify_rejects_a_tampered_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    let p = path.to_str().unwrap();
    assert_eq!(splitring(&["matrices", "--f", "2,-3,1", "--format", "json", "--out", p]).status.code(), Some(0));
    tamper(&path);
    let (v, code) = json(&["verify", p]);
    assert_eq!(code, 1);
    assert_eq!(v["passed"], false);
    assert_eq!(v["report"]["checks"]["regular_rep_agreement"]["status"], "fail");
}

#[test]
fn collapsing_matrix_ring() {
    let (v, code) = json(&["noncomm", "--ring", "Mat:2:Zmod:2", "--f", "[[1,0],[0,0]],1"]);
    assert_eq!(code, 0);
    assert_eq!(v["ideal_size"], 16);
    assert_eq!(v["quotient"]["size"], 1);
    assert_eq!(v["quotient"]["zero_ring"], true);
}

#[test]
fn upper_triangular_quotient() {
    let (v, code) = json(&["noncomm", "--ring", "UpperTri:2:Zmod:2", "--f", "[[0,1],[0,0]],1"]);
    assert_eq!(code, 0);
    assert_eq!(v["ideal_size"], 2);
    assert_eq!(v["quotient"]["size"], 4);
    assert_eq!(v["realization"]["splitting_ring"]["gamma_exhaustive"], true);
    assert_eq!(v["realization"]["splitting_ring"]["gamma_injective"], true);
}

#[test]
fn commutative_input_passes_through() {
    let (v, code) = json(&["noncomm", "--ring", "Zmod:5", "--f", "1,0,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["ideal_is_zero"], true);
    assert_eq!(v["quotient"]["size"], 5);
}

#[test]
fn cubic_over_q_has_only_permutations() {
    let (v, code) = json(&["automorphisms", "--ring", "Q", "--f", "-1,-1,0,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["theta_injective"], true);
    assert_eq!(v["permutation_certificates"].as_array().unwrap().len(), 6);
    assert!(v["scaling_certificates"].as_array().unwrap().is_empty());
}

fn scaling_units(v: &Value) -> Vec<String> {
    v["scaling_certificates"]
        .as_array()
        .unwrap()
        .iter()
        .inspect(|c| {
            assert_eq!(c["verdict"], true);
            for key in ["system", "commute", "factorization", "basis_unit_det", "verdict"] {
                assert!(c.get(key).is_some(), "{key}");
            }
        })
        .map(|c| c["system"].as_str().unwrap().split_whitespace().nth(1).unwrap().to_string())
        .collect()
}

#[test]
fn scaling_certificates_over_z5() {
    let (v, code) = json(&["automorphisms", "--ring", "Zmod:5", "--f", "0,0,1"]);
    assert_eq!(code, 0);
    assert!(scaling_units(&v).contains(&"u=4".to_string()));

    let (v, code) = json(&["automorphisms", "--ring", "Zmod:5", "--n", "4"]);
    assert_eq!(code, 0);
    let mut units = scaling_units(&v);
    units.sort();
    assert_eq!(units, ["u=1", "u=2", "u=3", "u=4"]);
}

#[test]
fn every_verb_shares_the_envelope() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    let p = path.to_str().unwrap();
    splitring(&["matrices", "--f", "2,-3,1", "--format", "json", "--out", p]);
    for (verb, args) in [
        ("relations", vec!["relations", "--f", "2,-3,1"]),
        ("matrices", vec!["matrices", "--f", "2,-3,1"]),
        ("noncomm", vec!["noncomm", "--ring", "Zmod:3", "--f", "2,0,1"]),
        ("automorphisms", vec!["automorphisms", "--f", "2,-3,1"]),
        ("verify", vec!["verify", p]),
    ] {
        let (v, _) = json(&args);
        assert_eq!(v["command"], verb);
        assert!(v["input"]["ring"].is_string());
        assert!(v["passed"].is_boolean());
    }
}

#[test]
fn seeded_runs_are_reproducible() {
    let args = ["matrices", "--ring", "Q", "--b", "1/2,0,-3", "--seed", "7"];
    let a = splitring(&args);
    let b = splitring(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
