use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn subranks(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subranks")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn verify(path: &Path) -> Value {
    json_of(&subranks(&["verify-report", path.to_str().unwrap()]))
}

#[test]
fn rank_report_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rank.json");
    let out = subranks(&["rank", "--gen", "uniform", "--dims", "3,3,3", "--field", "2", "--seed", "7", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let rep: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rep["results"]["prank"]["value"], rep["results"]["slice_rank"]["value"]);
    assert!(rep.get("timing_ms").is_none());
    let v = verify(&path);
    assert_eq!(v["results"]["all_ok"], true);
    assert_eq!(v["results"]["count"], 2);
}

#[test]
fn tampered_report_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rank.json");
    let out = subranks(&["rank", "--gen", "uniform", "--dims", "3,3", "--field", "5", "--seed", "1", "--kind", "partition"]);
    let mut rep = json_of(&out);
    let value = rep["certificates"][0]["value"].as_u64().unwrap();
    rep["certificates"][0]["value"] = Value::from(value + 1);
    fs::write(&path, serde_json::to_string(&rep).unwrap()).unwrap();
    let out = subranks(&["verify-report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["all_ok"], false);
}

#[test]
fn exit_codes() {
    let bad_field = subranks(&["rank", "--gen", "uniform", "--dims", "2,2", "--field", "4"]);
    assert_eq!(bad_field.status.code(), Some(2));
    let no_source = subranks(&["rank"]);
    assert_eq!(no_source.status.code(), Some(2));
    let budget = subranks(&["rank", "--gen", "uniform", "--dims", "3,3,3", "--field", "7", "--budget", "5"]);
    assert_eq!(budget.status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let det = dir.path().join("det.json");
    let out = subranks(&["find-equation", "--d", "2", "--n", "2", "--r", "1", "--m", "2", "--artifact", det.to_str().unwrap()]);
    assert!(out.status.success());
    // a diagonal matrix with nonzero diagonal is invertible
    let inv = subranks(&["decompose", "--gen", "diagonal", "--dims", "2,2", "--field", "5", "--poly", det.to_str().unwrap()]);
    assert_eq!(inv.status.code(), Some(4));
}

#[test]
fn timing_only_on_request() {
    let out = json_of(&subranks(&["bounds", "--d", "3", "--r", "1", "--timing"]));
    assert!(out["timing_ms"].is_number());
    assert_eq!(out["results"]["d3_degree_bound"]["m"], 8);
}

#[test]
fn equation_chain_and_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    let det = dir.path().join("det.json");
    let rep = dir.path().join("eq.json");
    let out = subranks(&[
        "find-equation", "--d", "2", "--n", "2", "--r", "1", "--m", "2", "--mode", "tight",
        "--artifact", det.to_str().unwrap(), "--out", rep.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(verify(&rep)["results"]["all_ok"], true);

    let chain = json_of(&subranks(&["hchain", det.to_str().unwrap()]));
    assert_eq!(chain["results"]["chain"]["verified"], true);
    assert_eq!(chain["results"]["chain"]["m"], 2);

    let t = dir.path().join("t.json");
    fs::write(
        &t,
        r#"{"order":2,"dims":[3,3],"field":{"char":5},"entries":[{"idx":[2,1],"val":"1"},{"idx":[2,3],"val":"4"},{"idx":[3,1],"val":"2"},{"idx":[3,3],"val":"3"}]}"#,
    )
    .unwrap();
    let dec_rep = dir.path().join("dec.json");
    let out = subranks(&["decompose", t.to_str().unwrap(), "--poly", det.to_str().unwrap(), "--out", dec_rep.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rep: Value = serde_json::from_str(&fs::read_to_string(&dec_rep).unwrap()).unwrap();
    assert_eq!(rep["results"]["reproduces"], true);
    assert!(rep["results"]["length"].as_u64().unwrap() <= 4);
    assert_eq!(verify(&dec_rep)["results"]["all_ok"], true);
}

#[test]
fn bridge_on_polynomial_and_tensor() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.json");
    // x1 x2 x3 + x1^3 over GF(7)
    fs::write(
        &p,
        r#"{"vars":"point","n":3,"degree":3,"field":{"char":7},"terms":[{"exp":[[1,1],[2,1],[3,1]],"coef":"1"},{"exp":[[1,3]],"coef":"1"}]}"#,
    )
    .unwrap();
    let rep_path = dir.path().join("b.json");
    let out = subranks(&["bridge", p.to_str().unwrap(), "--out", rep_path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rep: Value = serde_json::from_str(&fs::read_to_string(&rep_path).unwrap()).unwrap();
    assert_eq!(rep["results"]["phi_psi_identity"], true);
    assert_eq!(rep["results"]["strength"]["value"], 1);
    assert_eq!(rep["results"]["transported_reproduces"], true);
    assert_eq!(verify(&rep_path)["results"]["all_ok"], true);

    let t = json_of(&subranks(&["rank", "--gen", "uniform", "--dims", "2,2,2", "--field", "7", "--seed", "2", "--kind", "partition"]));
    let tp = dir.path().join("t.json");
    fs::write(&tp, serde_json::to_string(&t["certificates"][0]["tensor"]).unwrap()).unwrap();
    let b = json_of(&subranks(&["bridge", tp.to_str().unwrap()]));
    assert_eq!(b["results"]["strength_at_most_prank"], true);
    assert_eq!(b["results"]["transported_sums_to_phi"], true);
}

#[test]
fn scans_and_question12() {
    let scan = json_of(&subranks(&["subtensor-scan", "--gen", "uniform", "--dims", "4,4", "--field", "3", "--size", "2", "--seed", "5"]));
    assert_eq!(scan["results"]["count"], 36);
    assert_eq!(scan["results"]["matrix_fact"]["holds"], true);
    assert_eq!(scan["results"]["monotone"], true);

    let sampled = json_of(&subranks(&["subtensor-scan", "--gen", "uniform", "--dims", "3,3,3", "--field", "2", "--size", "2", "--sample", "5"]));
    assert_eq!(sampled["results"]["count"], 5);
    assert_eq!(sampled["results"]["mode"], "sample");

    let too_many = subranks(&["subtensor-scan", "--gen", "uniform", "--dims", "6,6,6", "--field", "2", "--size", "3", "--threshold", "10"]);
    assert_eq!(too_many.status.code(), Some(2));

    let q = json_of(&subranks(&["question12", "--gen", "uniform", "--dims", "4,4", "--field", "2", "--r", "1", "--count", "6"]));
    for run in q["results"]["runs"].as_array().unwrap() {
        if run["found"] == true {
            assert_eq!(run["matrix_check"], true);
        }
    }
}

#[test]
fn counting_check_points() {
    let c = json_of(&subranks(&["counting-check", "--d", "2", "--r", "1"]));
    assert_eq!(c["results"]["holds"], true);
    let small = json_of(&subranks(&["counting-check", "--d", "2", "--r", "1", "--n", "2", "--m", "2"]));
    assert_eq!(small["results"]["S"], "8");
}
