use std::process::{Command, Output};

use serde_json::Value;

fn srlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_srlab")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn check_prufer_on_gcd_passes() {
    let o = srlab(&["check", "--suite", "prufer", "--semiring", "gcd", "--samples", "500", "--seed", "42"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    let laws = v["report"]["laws"].as_array().unwrap();
    for id in ["L1", "L2", "L3", "L4", "L5", "L6"] {
        let l = laws.iter().find(|l| l["id"] == id).unwrap();
        assert_eq!(l["fail"], 0);
        assert_eq!(l["pass"], 500);
        assert_eq!(l["verification"], "exact");
    }
}

#[test]
fn failing_suite_exits_one() {
    let o = srlab(&["check", "--suite", "prufer", "--semiring", "nat", "--samples", "30"]);
    assert_eq!(code(&o), 1);
    assert!(json(&o)["report"]["laws"][0]["counterexample"].is_object());
}

#[test]
fn gaussian_search_on_naturals_finds_a_pair() {
    let o = srlab(&["search", "gaussian", "--semiring", "nat", "--max-deg", "2", "--coeff-bound", "9"]);
    assert_eq!(code(&o), 1);
    let r = &json(&o)["result"];
    assert_eq!(r["found"], true);
    assert!(r["f"].is_string() && r["g"].is_string() && r["witness"].is_string());
    let o = srlab(&["search", "dm", "--semiring", "boolean", "--max-deg", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["result"]["found"], false);
}

#[test]
fn eval_reports_value_with_exit_zero() {
    let o = srlab(&["eval", "--semiring", "nat", "(<2>+<3>)*(<2>^<3>) == <2>*<3>"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["value"]["value"], false);
    assert_eq!(v["verification"], "exact");
    let o = srlab(&["eval", "--semiring", "gcd", "(<2>+<3>)*(<2>^<3>) == <2>*<3>"]);
    assert_eq!(json(&o)["value"]["value"], true);
    let o = srlab(&["eval", "--semiring", "gcd", "--bind", "I=<4,6>", "I : <4>"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["value"]["type"], "ideal");
    assert_eq!(v["value"]["canonical"]["kind"], "principal");
    let o = srlab(&["eval", "--semiring", "nat", "--format", "text", "I == I", "--bind", "I=<2,3>"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout), "true  (exact)\n");
}

#[test]
fn usage_errors_exit_two() {
    let o = srlab(&["eval", "--semiring", "nat", "<2> +"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 1, column 6"), "{err}");

    let o = srlab(&["check", "--suite", "prufer", "--semiring", "integers"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("known semirings") && err.contains("min-plus(k)"), "{err}");
    assert!(o.stdout.is_empty());

    let o = srlab(&["check", "--suite", "noether", "--semiring", "gcd"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("gilmer-tsang"));

    assert_eq!(code(&srlab(&["frobnicate"])), 2);
    assert_eq!(code(&srlab(&["enumerate", "--order", "9"])), 2);
    assert_eq!(code(&srlab(&["eval", "--semiring", "nat", "J"])), 2);
}

#[test]
fn enumeration_and_caps() {
    let o = srlab(&["enumerate", "--order", "3", "--classify", "--deg", "2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["count"], 6);
    assert_eq!(v["partial"], false);
    let recs = v["records"].as_array().unwrap();
    assert_eq!(recs.len(), 6);
    assert!(recs.iter().all(|r| r["violation"] == false));

    let o = srlab(&["enumerate", "--order", "4", "--node-budget", "10"]);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["partial"], true);
}

#[test]
fn enumeration_exports_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let export = dir.path().join("tables");
    let o = srlab(&["enumerate", "--order", "2", "--out", out.to_str().unwrap(), "--export", export.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["count"], 2);
    let t = std::fs::read_to_string(export.join("order2-0.table")).unwrap();
    assert!(srlab_core::FiniteSemiringTable::parse(&t).unwrap().verify_axioms().is_empty());
}

#[test]
fn falsify_driver() {
    let o = srlab(&["falsify", "--semiring", "gcd", "--semiring", "nat", "(I+J)*(I^J) == I*J", "--samples", "20"]);
    assert_eq!(code(&o), 1);
    let c = &json(&o)["counterexample"];
    assert_eq!(c["semiring"], "naturals");
    assert_eq!(c["assignment"]["I"], "<2>");
    assert_eq!(c["assignment"]["J"], "<3>");
    let o = srlab(&["falsify", "--semiring", "gcd", "(I+J)*(I^J) == I*J", "--samples", "20"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn timing_is_opt_in() {
    let args = ["check", "--suite", "valuation", "--semiring", "boolean", "--samples", "5"];
    assert!(json(&srlab(&args))["report"].get("ms").is_none());
    let mut timed = args.to_vec();
    timed.push("--timing");
    assert!(json(&srlab(&timed))["report"]["ms"].is_u64());
}
