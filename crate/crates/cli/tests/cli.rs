//! End-to-end tests of the binary: exit-code contract, report schema and
//! determinism.

use std::process::{Command, Output};

fn hypersym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypersym"))
        .args(args)
        .env_remove("HYPERSYM_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn verify_small_suite_passes_with_schema() {
    let out = hypersym(&["verify", "--seed", "42", "--samples", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "verify");
    assert_eq!(v["overall"], "pass");
    assert_eq!(v["config"]["seed"], 42);
    let rows = v["results"].as_array().unwrap();
    // 30 identities + 20 invariant-form generators.
    assert_eq!(rows.len(), 50);
    for row in rows {
        assert!(row["pass"].as_bool().unwrap(), "{row}");
        assert!(row["row"].is_string());
        assert!(row["worst_residual"].is_number());
    }
}

#[test]
fn verify_is_deterministic_per_seed() {
    let a = hypersym(&["verify", "--samples", "2", "--seed", "7", "--jobs", "2"]);
    let b = hypersym(&["verify", "--samples", "2", "--seed", "7", "--jobs", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "report bodies must be byte-identical");
    let c = hypersym(&["verify", "--samples", "2", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout, "different seeds sample different points");
}

#[test]
fn filter_selects_one_identity() {
    let out = hypersym(&["verify", "--samples", "2", "--filter", "d1st1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["row"], "d1st1");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(hypersym(&["verify", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(
        hypersym(&["verify", "--nome", "1.5"]).status.code(),
        Some(2)
    );
    assert_eq!(hypersym(&["verify", "--tol", "0.5"]).status.code(), Some(2));
    assert_eq!(hypersym(&["nonsense"]).status.code(), Some(2));
    assert_eq!(
        hypersym(&["eval", "4f3", "--params", "not json"]).status.code(),
        Some(2)
    );
}

#[test]
fn groups_certification_passes() {
    let out = hypersym(&["groups"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["overall"], "pass");
    let orders: Vec<u64> = v["groups"]["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["order"].as_u64().unwrap())
        .collect();
    assert_eq!(orders, vec![720, 72, 8, 51840, 1440, 96]);
}

#[test]
fn typos_resolve_uniquely() {
    let out = hypersym(&["typos", "--samples", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let rows = v["typos"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for row in rows {
        assert_eq!(row["status"], "UNIQUE", "{row}");
    }
}

#[test]
fn typos_low_sample_warns() {
    let out = hypersym(&["typos", "--samples", "1"]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("low confidence"), "{err}");
}

#[test]
fn eval_trivial_values() {
    let out = hypersym(&[
        "eval",
        "4f3",
        "--params",
        r#"{"N":0,"a":["1/3","1/4","17/12"],"d":["1/3","1/4","29/12"]}"#,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1/1");

    let out = hypersym(&[
        "eval",
        "enm",
        "--params",
        r#"{"a":["0","0"],"x":["0.12+0.04i","0.55-0.1i"],"s":"0.4+0.2i","u":["0.3+0.1i"],"v":["0.2-0.15i"],"termination":{"rectangular":[0,0]}}"#,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("1+0i"), "{text}");
    assert!(text.contains("error budget"), "{text}");
}

#[test]
fn eval_matches_frozen_oracle_value() {
    // The 2x2 rectangular sample whose value was frozen from the
    // independent 4-term oracle.
    let out = hypersym(&[
        "eval",
        "an4f3",
        "--params",
        r#"{"kind":"rectangular","m":[1,1],"x":["0","1/3"],"a":["1/2","1/3"],"e":["3/2","5/4"],"c":"1/4","d":"-8/3"}"#,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "668/675");
}

#[test]
fn eval_surfaces_pole_and_balancing_errors() {
    // Unbalanced 4f3 input.
    let out = hypersym(&[
        "eval",
        "4f3",
        "--params",
        r#"{"N":2,"a":["1","1","1"],"d":["1","1","1"]}"#,
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("balancing"), "{err}");
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = hypersym(&[
        "verify",
        "--samples",
        "1",
        "--filter",
        "las*",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["overall"], "pass");
    assert_eq!(v["results"].as_array().unwrap().len(), 2);
}

#[test]
fn jobs_env_overrides_flag() {
    let out = Command::new(env!("CARGO_BIN_EXE_hypersym"))
        .args(["verify", "--samples", "1", "--filter", "d1st1", "--jobs", "2"])
        .env("HYPERSYM_JOBS", "not-a-number")
        .output()
        .unwrap();
    // The env var takes precedence, so its invalid value is a usage error.
    assert_eq!(out.status.code(), Some(2));
}
