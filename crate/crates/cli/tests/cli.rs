use std::path::PathBuf;
use std::process::Command;

use monopole_cli::{run, Outcome};
use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn monopole(args: &[&str]) -> Outcome {
    run(std::iter::once("monopole").chain(args.iter().copied()))
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}", o.stdout))
}

fn temp_file(name: &str, contents: &str) -> String {
    let p = std::env::temp_dir().join(format!("monopole-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn k3_pun_dimension() {
    let o = monopole(&["dim", "pun", "--input", &data("k3.json")]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = json(&o);
    assert_eq!(v["result"]["expected_dim"], 2);
    assert_eq!(v["result"]["by_multiplicity"], serde_json::json!([[1, -1], [2, 2]]));
    assert_eq!(v["tool"], "monopole");
    assert_eq!(v["input_sha256"].as_str().unwrap().len(), 64);

    let one = json(&monopole(&["dim", "pun", "--input", &data("k3.json"), "--dirac-multiplicity", "1"]));
    assert_eq!(one["result"]["expected_dim"], -1);
}

#[test]
fn k3_un_and_asd_dimensions() {
    let un = json(&monopole(&["dim", "un", "--input", &data("k3.json")]));
    assert_eq!(un["result"]["expected_dim"], 2 - 4);
    // 8k - 3(1 + b2+) with k = 1
    let asd = json(&monopole(&["dim", "asd", "--input", &data("k3.json")]));
    assert_eq!(asd["result"]["expected_dim"], -4);
}

#[test]
fn tau0_verdict() {
    let v = json(&monopole(&["tau0", "--input", &data("k3.json")]));
    assert_eq!(v["result"]["vanishes_generically"], true);
    assert_eq!(v["result"]["cokernel_dimension"], 3);
}

#[test]
fn echoed_input_round_trips() {
    let v = json(&monopole(&["tau0", "--input", &data("cp2_rank3.json")]));
    let echoed = serde_json::to_string(&v["input"]).unwrap();
    let path = temp_file("echo.json", &echoed);
    let again = json(&monopole(&["tau0", "--input", &path]));
    assert_eq!(again["input"], v["input"]);
    assert_eq!(again["input_sha256"], v["input_sha256"]);
}

#[test]
fn reductions_on_s2_x_s2() {
    let o = monopole(&["reductions", "enumerate", "--input", &data("s2xs2.json")]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = json(&o);
    let r = &v["result"];
    assert_eq!(r["lattice_points"], 5);
    assert_eq!(r["candidate_count"], 5);
    for c in r["candidates"].as_array().unwrap() {
        assert_eq!(c["f"]["rank"], 1);
        assert_eq!(c["tau"], serde_json::json!({"num": 1, "den": 2}));
    }
}

#[test]
fn reductions_flags_override_bounds() {
    // |v|^2 <= (13 / 2 pi)^2 ~ 4.28
    let wide = json(&monopole(&["reductions", "enumerate", "--input", &data("s2xs2.json"), "--c-trace", "13"]));
    assert_eq!(wide["result"]["lattice_points"], 13);
    let skew = json(&monopole(&["reductions", "enumerate", "--input", &data("s2xs2.json"), "--g", "[[2,0],[0,\"1/2\"]]"]));
    // 2x^2 + y^2/2 <= 1
    assert_eq!(skew["result"]["lattice_points"], 3);
}

#[test]
fn missing_bounds_is_a_validation_error() {
    let o = monopole(&["reductions", "enumerate", "--input", &data("k3.json")]);
    assert_eq!(o.code, 2);
    assert_eq!(json(&o)["error"]["field"], "bounds");
}

#[test]
fn strata_drop_per_step() {
    let v = json(&monopole(&["strata", "--input", &data("k3.json"), "--kmax", "3"]));
    let drops: Vec<i64> = v["result"]["strata"].as_array().unwrap().iter().map(|s| s["dimension_drop"].as_i64().unwrap()).collect();
    assert_eq!(drops, vec![0, 6, 12, 18]);
}

#[test]
fn malformed_json_exits_2() {
    let path = temp_file("broken.json", "{\"manifold\": ");
    let o = monopole(&["tau0", "--input", &path]);
    assert_eq!(o.code, 2);
    assert_eq!(json(&o)["error"]["kind"], "validation");
}

#[test]
fn unknown_key_names_field() {
    let path = temp_file(
        "unknown.json",
        r#"{"manifold":{"name":"x","b1":0,"intersection_form":[[1]],"bogus":1},"spinc":{"c1":[1]},"bundle":{"rank":2,"c1":[0],"c2":1}}"#,
    );
    let o = monopole(&["tau0", "--input", &path]);
    assert_eq!(o.code, 2);
    assert_eq!(json(&o)["error"]["field"], "manifold.bogus");
}

#[test]
fn wrong_class_length_names_field() {
    let path = temp_file(
        "length.json",
        r#"{"manifold":{"name":"x","b1":0,"intersection_form":[[1]]},"spinc":{"c1":[1,1]},"bundle":{"rank":2,"c1":[0],"c2":1}}"#,
    );
    let o = monopole(&["dim", "pun", "--input", &path]);
    assert_eq!(o.code, 2);
    assert_eq!(json(&o)["error"]["field"], "spinc.c1");
}

#[test]
fn missing_file_exits_2() {
    let o = monopole(&["tau0", "--input", "/nonexistent/problem.json"]);
    assert_eq!(o.code, 2);
    assert_eq!(json(&o)["error"]["kind"], "io");
}

#[test]
fn usage_error_exits_2() {
    assert_eq!(monopole(&["mu", "properness"]).code, 2);
    assert_eq!(monopole(&["no-such-command"]).code, 2);
}

#[test]
fn schema_is_json() {
    let o = monopole(&["schema"]);
    assert_eq!(o.code, 0);
    let v = json(&o);
    assert_eq!(v["required"], serde_json::json!(["manifold", "spinc", "bundle"]));
}

#[test]
fn table_format() {
    let o = monopole(&["--format", "table", "tau0", "--input", &data("k3.json")]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.lines().any(|l| l.starts_with("result.vanishes_generically") && l.ends_with("true")));
    assert!(serde_json::from_str::<Value>(&o.stdout).is_err());

    let t = monopole(&["--format", "table", "reductions", "enumerate", "--input", &data("s2xs2.json")]);
    assert!(t.stdout.contains("[result.candidates]"));
}

#[test]
fn property_failure_exits_1() {
    let o = monopole(&["mu", "properness", "--n", "2", "--starts", "2", "--floor", "10"]);
    assert_eq!(o.code, 1);
    assert_eq!(json(&o)["result"]["success"], false);
}

#[test]
fn margin_and_checks_succeed() {
    let m = monopole(&["kaehler", "margin", "--n", "2", "--tau", "0.5", "--lambda", "1+0i", "--starts", "8"]);
    assert_eq!(m.code, 0, "{}", m.stdout);
    let est = json(&m)["result"]["estimate"].as_f64().unwrap();
    assert!((est - 1.6f64.sqrt()).abs() < 1e-6);

    let c = monopole(&["mu", "check", "--suite", "quartic", "--samples", "50", "--seed", "3"]);
    assert_eq!(c.code, 0);
    assert_eq!(json(&c)["result"]["passed"], true);
}

#[test]
fn timing_only_on_request() {
    let plain = json(&monopole(&["tau0", "--input", &data("k3.json")]));
    assert!(plain.get("timing").is_none());
    let timed = json(&monopole(&["--timing", "tau0", "--input", &data("k3.json")]));
    assert!(timed.get("timing").is_some());
}

#[test]
fn same_seed_same_bytes() {
    let args = ["kaehler", "check", "--suite", "all", "--samples", "40", "--starts", "2", "--seed", "11"];
    assert_eq!(monopole(&args).stdout, monopole(&args).stdout);
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_monopole");
    let ok = Command::new(bin).args(["tau0", "--input", &data("k3.json")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["result"]["vanishes_generically"], true);
    let bad = Command::new(bin).args(["tau0", "--input", "/nonexistent.json"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error:"));
}
