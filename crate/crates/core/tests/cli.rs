use std::process::Command;

use serde_json::Value;
use vertexlink::cli::{run, STRAND_CAP_ENV};
use vertexlink::ring::parse;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("vertexlink").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, _) = call(args);
    (code, serde_json::from_str(&out).expect("valid json"))
}

#[test]
fn trefoil_invariant() {
    let (code, out, _) = call(&["invariant", "--model", "2", "--braid", "1 1 1", "--normalization", "ambient"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "-t^4 + t^3 + t"), "{out}");
}

#[test]
fn json_values_round_trip_through_the_parser() {
    for n in ["2", "3", "4"] {
        for norm in ["regular", "phi", "ambient"] {
            let (code, v) = json(&["invariant", "--model", n, "--braid", "1 -2 1 -2", "--normalization", norm, "--json"]);
            assert_eq!(code, 0);
            let value = &v["value"];
            let from_s = parse(value["s"].as_str().unwrap()).unwrap();
            for var in ["q", "t"] {
                assert_eq!(parse(value[var].as_str().unwrap()).unwrap(), from_s, "N={n} {norm} {var}");
            }
            assert!(value["radical_terms"].as_array().unwrap().is_empty());
        }
    }
}

#[test]
fn verify_everything_for_n4() {
    let (code, out, _) = call(&["verify", "--model", "4", "--all"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"));
    let (code, v) = json(&["verify", "--model", "3", "--all", "--sign", "minus", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], Value::Bool(true));
    assert!(v["checks"].as_object().unwrap().contains_key("minpoly"));
}

#[test]
fn verify_spectral_and_invariance() {
    let (code, v) = json(&["verify", "--model", "2", "--spectral", "--lambda", "-0.7", "--u", "1.3", "--json"]);
    assert_eq!(code, 0, "{v}");
    let (code, _, _) = call(&["verify", "--model", "3", "--braid", "1 1 1", "--trials", "5", "--seed", "9"]);
    assert_eq!(code, 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call(&["invariant", "--model", "5", "--braid", "1"]).0, 2);
    assert_eq!(call(&["invariant", "--model", "2", "--braid", "1 x"]).0, 2);
    assert_eq!(call(&["invariant", "--model", "2", "--braid", "3", "--strands", "2"]).0, 2);
    assert_eq!(call(&["invariant", "--model", "2", "--braid", "1 2 3 4 5 6 7"]).0, 2);
    assert_eq!(call(&["uq", "--j", "2"]).0, 2);
    assert_eq!(call(&["uq", "--j", "1/2", "--q", "-1"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    let (_, _, err) = call(&["invariant", "--model", "5", "--braid", "1"]);
    assert!(err.contains("unsupported N = 5"), "{err}");
}

#[test]
fn strand_cap_flag_and_environment() {
    let long = "1 2 3 4 5 6";
    assert_eq!(call(&["invariant", "--model", "2", "--braid", long]).0, 2);
    assert_eq!(call(&["invariant", "--model", "2", "--braid", long, "--strand-cap", "7"]).0, 0);
    let bin = env!("CARGO_BIN_EXE_vertexlink");
    let status = |cap: &str| {
        Command::new(bin)
            .args(["invariant", "--model", "2", "--braid", long])
            .env(STRAND_CAP_ENV, cap)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(status("7"), Some(0));
    assert_eq!(status("3"), Some(2));
}

#[test]
fn solver_skein_tl_and_uq() {
    let (code, out, _) = call(&["solve-m", "--model", "3", "--discover-z"]);
    assert_eq!(code, 0, "{out}");
    let (code, v) = json(&["skein", "--model", "4", "--braid", "1 -2 3", "--position", "2", "--json"]);
    assert_eq!(code, 0, "{v}");
    let (code, v) = json(&["tl", "--model", "2", "--check", "--strands", "4", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["bracket"]["a"], Value::String("s^-1".into()));
    assert_eq!(call(&["uq", "--j", "1/2", "--q", "1.5"]).0, 0);
    assert_eq!(call(&["uq", "--j", "3/2", "--q", "2"]).0, 0);
    // the spin-1 sign defect makes this a verification failure, not a usage error
    let (code, v) = json(&["uq", "--j", "1", "--q", "1.2", "--json"]);
    assert_eq!(code, 1);
    assert!(v["proportionality"]["abs_spread"].as_f64().unwrap() < 1e-8);
}

#[test]
fn identical_requests_give_identical_output() {
    let args = ["verify", "--model", "2", "--braid", "1 -2 1 -2", "--trials", "10", "--seed", "3", "--json"];
    assert_eq!(call(&args), call(&args));
}
