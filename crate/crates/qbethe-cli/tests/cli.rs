use std::process::{Command, Output};

use serde_json::Value;

fn qbethe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbethe")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const COMPUTE: [&str; 15] = [
    "weight", "compute", "--N", "2", "--n", "1", "--module", "vec@2", "--variant", "twist", "--method", "direct",
    "--q", "3/7", "--seed",
];

fn compute(method: &str) -> Output {
    let mut args: Vec<&str> = COMPUTE.to_vec();
    args.push("1");
    args[11] = method;
    qbethe(&args)
}

#[test]
fn compute_smallest_case() {
    let out = compute("direct");
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["vector"].as_array().unwrap().len(), 2);
    assert_eq!(v["module"], "vec@2/1");
    assert_eq!(v["variant"], "twist");
    assert_eq!(v["n"], serde_json::json!([1]));
    assert_eq!(v["q"], "3/7");
}

#[test]
fn trace_method_agrees_for_one_excitation() {
    let direct = json(&compute("direct"));
    let tv = json(&compute("tv"));
    assert_eq!(direct["vector"], tv["vector"]);
    assert_eq!(direct["t"], tv["t"]);
}

#[test]
fn output_is_byte_identical_across_runs() {
    assert_eq!(compute("recurrence").stdout, compute("recurrence").stdout);
}

#[test]
fn explicit_variables_are_used() {
    let out = qbethe(&[
        "weight", "compute", "--N", "3", "--n", "1,1", "--module", "tensor(vec@2,vec@3)", "--t", "1:1=5/7,2:1=-2/9",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["t"], serde_json::json!([["5/7"], ["-2/9"]]));
    assert_eq!(v["vector"].as_array().unwrap().len(), 9);
}

#[test]
fn usage_errors_exit_2() {
    let cases: [&[&str]; 6] = [
        &["weight", "compute", "--N", "2", "--module", "vec@2"],
        &["weight", "compute", "--N", "3", "--n", "1", "--module", "vec@2"],
        &["weight", "compute", "--N", "3", "--n", "1,1", "--module", "vec@2", "--t", "1:1=5/7"],
        &["weight", "compute", "--N", "2", "--n", "7", "--module", "vec@2"],
        &["weight", "compute", "--N", "2", "--n", "1", "--module", "vec@2", "--q", "-1"],
        &["verify", "no-such-suite"],
    ];
    for args in cases {
        assert_eq!(qbethe(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn computation_error_is_structured() {
    let out = qbethe(&["weight", "compute", "--N", "2", "--n", "1", "--module", "vec@2", "--variant", "orig", "--method", "tv"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"], "VariantError");
}

#[test]
fn verify_yang_baxter_rank_4() {
    let out = qbethe(&["verify", "yang-baxter", "--N", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["passed"], true);
    assert_eq!(report["config"]["seeds"], serde_json::json!([1, 2, 3]));
}

#[test]
fn corrupted_r_matrix_reports_counterexample() {
    let out = qbethe(&["weight", "verify", "yang-baxter", "--N", "2", "--seeds", "1", "--fault", "r-entry"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    let cx = &report["suites"][0]["counterexample"];
    assert_eq!(cx["check"], "R12 R13 R23 = R23 R13 R12");
    assert!(cx["inputs"]["u"].is_array());
    assert!(cx["lhs"]["differing_entries"].as_u64().unwrap() > 0);
}

#[test]
fn rmatrix_dump_is_row_major() {
    let out = qbethe(&["rmatrix", "dump", "--variant", "orig", "--N", "2", "--u", "2", "--v", "-1/3"]);
    assert_eq!(out.status.code(), Some(0));
    let m = json(&out)["matrix"].clone();
    let rows = m.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 4));
    assert_eq!(rows[0][0], "1/1");
    assert_eq!(rows[0][1], "0/1");
}

#[test]
fn module_inspect_reports_truncation() {
    let out = qbethe(&["module", "inspect", "--N", "2", "--module", "verma2(-2,1,4,3/5)"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dim"], 5);
    assert_eq!(v["singular_index"], 0);
    assert_eq!(v["top_level"], serde_json::json!([4]));
    assert_eq!(v["lambda"].as_array().unwrap().len(), 2);
}
