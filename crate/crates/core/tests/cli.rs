use std::process::{Command, Output};

use serde_json::Value;

fn ballab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ballab"))
        .args(args)
        .env_remove("BALLAB_WORKERS")
        .env_remove("BALLAB_FORMAT")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("one JSON document")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("JSON line"))
        .collect()
}

fn seq_values(args: &[&str]) -> Vec<String> {
    let out = ballab(args);
    assert_eq!(out.status.code(), Some(0));
    json(&out)["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["value"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn seq_examples() {
    assert_eq!(
        seq_values(&["seq", "--kind", "balancing", "--from", "0", "--to", "5"]),
        ["0", "1", "6", "35", "204", "1189"]
    );
    assert_eq!(
        seq_values(&[
            "seq",
            "--kind",
            "balancing",
            "--from",
            "0",
            "--to",
            "12",
            "--mod",
            "9"
        ]),
        ["0", "1", "6", "8", "6", "1", "0", "8", "3", "1", "3", "8", "0"]
    );
    assert_eq!(
        seq_values(&["seq", "--kind", "pell", "--from", "0", "--to", "3"]),
        ["0", "1", "2", "5"]
    );
}

#[test]
fn seq_csv_and_env_format() {
    let out = ballab(&[
        "seq",
        "--kind",
        "lucas-balancing",
        "--to",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "index,value\n0,1\n1,3\n2,17\n3,99\n"
    );
    let out = Command::new(env!("CARGO_BIN_EXE_ballab"))
        .args(["seq", "--to", "2"])
        .env("BALLAB_FORMAT", "csv")
        .output()
        .unwrap();
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "index,value\n0,0\n1,1\n2,6\n"
    );
}

#[test]
fn seq_bad_range_is_usage_error() {
    assert_eq!(
        ballab(&["seq", "--from", "5", "--to", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ballab(&["seq", "--kind", "fibonacci", "--to", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn big_values_are_decimal_strings() {
    let out = ballab(&["term", "--kind", "balancing", "--n", "200"]);
    let v = json(&out);
    let value = v["results"][0]["value"].as_str().unwrap();
    assert!(value.len() > 150);
    assert_eq!(v["results"][0]["method"], "doubling");
    let iter = ballab(&["term", "--n", "200", "--doubling-threshold", "1000"]);
    assert_eq!(json(&iter)["results"][0]["value"].as_str().unwrap(), value);
}

#[test]
fn period_report() {
    let v = json(&ballab(&["period", "--mod", "9"]));
    assert_eq!(v["results"][0]["modulus"], 9);
    assert_eq!(v["results"][0]["period"], 12);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(ballab(&["period", "--mod", "1"]).status.code(), Some(2));
}

#[test]
fn balancer_report() {
    let v = json(&ballab(&["balancer", "35"]));
    assert_eq!(v["results"][0]["balancer"], "14");
    let v = json(&ballab(&["balancer", "5"]));
    assert_eq!(v["results"][0]["balancer"], Value::Null);
}

#[test]
fn verify_suites_pass() {
    for (suite, max_n) in [("identities", "200"), ("modular", "600"), ("gcd", "120")] {
        let out = ballab(&["verify", "--suite", suite, "--max-n", max_n]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
        let v = json(&out);
        assert_eq!(v["all_passed"], true);
        for check in v["results"].as_array().unwrap() {
            assert_eq!(check["passed"], true, "{check}");
        }
    }
}

#[test]
fn search_claims_match() {
    let out = ballab(&[
        "search",
        "sum-power",
        "--max-index",
        "150",
        "--parity",
        "same",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let ls = lines(&out);
    let summary = ls.last().unwrap();
    assert_eq!(summary["claims"]["verdict"], "MATCH");
    assert_eq!(summary["claims"]["found"][0], "(3,1,6,2)");
    assert_eq!(summary["claims"]["bound"], "0 <= m <= n <= 150");

    let out = ballab(&["search", "product-form", "--max-index", "80"]);
    assert_eq!(
        lines(&out).last().unwrap()["claims"]["found"][0],
        "(2,1,1,3,2)"
    );
}

#[test]
fn opposite_parity_is_exploratory() {
    let out = ballab(&[
        "search",
        "sum-power",
        "--max-index",
        "60",
        "--parity",
        "opposite",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let ls = lines(&out);
    assert_eq!(ls[0]["label"], "EXPLORATORY");
    assert_eq!(ls.last().unwrap()["claims"], Value::Null);
    assert_eq!(ls[1]["data"]["q"]["family"]["min"], 2);
}

#[test]
fn off_hypothesis_runs_carry_no_claims() {
    // the exemption admits (2, 0) with 6^3 = 216, outside the cube-sum hypotheses
    let out = ballab(&[
        "search",
        "cube-sum-minus",
        "--max-index",
        "10",
        "--zero-exempt",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let ls = lines(&out);
    assert_eq!(ls.last().unwrap()["claims"], Value::Null);
    assert!(ls
        .iter()
        .any(|l| l["data"]["x"] == "6" && l["data"]["q"]["exact"] == 3));

    // a box that cannot contain (3,1,6,2) makes no claim either
    let out = ballab(&["search", "sum-power", "--max-index", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out).last().unwrap()["claims"], Value::Null);
}

#[test]
fn inconsistent_flags_are_usage_errors() {
    assert_eq!(
        ballab(&[
            "search",
            "cube-sum-plus",
            "--max-index",
            "10",
            "--min-exp",
            "2"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        ballab(&[
            "search",
            "product-form",
            "--max-index",
            "10",
            "--parity",
            "same"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        ballab(&[
            "search",
            "special-form",
            "--max-index",
            "10",
            "--prime",
            "9"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        ballab(&["search", "sum-power", "--max-index", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(ballab(&["search", "sum-power"]).status.code(), Some(2));
}

#[test]
fn workers_env_does_not_change_records() {
    let run = |workers: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_ballab"))
            .args(["search", "square-diff", "--max-index", "60"])
            .env("BALLAB_WORKERS", workers)
            .output()
            .unwrap();
        let text = String::from_utf8_lossy(&out.stdout).to_string();
        text.lines()
            .filter(|l| l.starts_with("{\"type\":\"record\""))
            .map(str::to_string)
            .collect::<Vec<_>>()
    };
    assert_eq!(run("1"), run("6"));
}
