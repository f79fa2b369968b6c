use std::process::{Command, Output};

use serde_json::Value;

fn pdigits(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdigits"))
        .args(args)
        .env_remove("PDIGITS_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn search_seven() {
    let out = pdigits(&["search", "--kind", "p", "--base", "10", "--digits", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["n_min"], 5);
    assert_eq!(v["f"], "7");
    assert_eq!(v["kind"], "p");
    assert_eq!(v["within_bound"], true);
}

#[test]
fn bound_breakdown() {
    let out = pdigits(&["bound", "--kind", "p", "--base", "10", "--t", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["theorem_bound"], 5470);
    for conv in ["uniform", "actual"] {
        for key in ["L1", "L2", "L3", "L4", "D", "bound", "delta"] {
            assert!(v[conv][key].is_number(), "{conv}.{key}");
        }
    }
    assert!((v["uniform"]["delta"].as_f64().unwrap() - 0.1).abs() < 1e-15);
}

#[test]
fn verify_base_ten() {
    let out = pdigits(&["verify", "--kind", "p", "--base", "10", "--t", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["all_within_bound"], true);
    assert_eq!(v["results"].as_array().unwrap().len(), 9);
    assert!(v.get("runtime_seconds").is_none());
}

#[test]
fn identical_runs_give_identical_json() {
    let args = ["verify", "--kind", "pl", "--base", "10", "--t", "1"];
    let a = pdigits(&args);
    let b = pdigits(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn csv_and_json_agree() {
    let args = ["verify", "--kind", "p", "--base", "7", "--t", "1"];
    let j = json(&pdigits(&args));
    let mut csv_args = args.to_vec();
    csv_args.extend(["--output", "csv"]);
    let text = String::from_utf8(pdigits(&csv_args).stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("f,n_min,bound,within_bound,method"));
    let results = j["results"].as_array().unwrap();
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), results.len());
    for (row, r) in rows.iter().zip(results) {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols[0], r["f"].as_str().unwrap());
        assert_eq!(cols[1], r["n_min"].to_string());
        assert_eq!(cols[2], r["bound"].to_string());
        assert_eq!(cols[3], r["within_bound"].to_string());
        assert_eq!(cols[4], r["method"].as_str().unwrap());
    }
}

#[test]
fn exit_codes() {
    assert_eq!(
        pdigits(&["search", "--digits", "012"]).status.code(),
        Some(2)
    );
    assert_eq!(
        pdigits(&["search", "--digits", "7", "--base", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(pdigits(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        pdigits(&["search", "--digits", "9", "--limit", "5"])
            .status
            .code(),
        Some(1)
    );
    let over = pdigits(&["verify", "--t", "3", "--memory-budget", "1M"]);
    assert_eq!(over.status.code(), Some(3));
    assert!(over.stdout.is_empty());
}

#[test]
fn cache_directory_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let first = pdigits(&["verify", "--kind", "pl", "--t", "1", "--cache-dir", path]);
    assert_eq!(first.status.code(), Some(0));
    assert!(dir.path().join("pl.pdt").exists());
    let second = Command::new(env!("CARGO_BIN_EXE_pdigits"))
        .args(["verify", "--kind", "pl", "--t", "1"])
        .env("PDIGITS_CACHE_DIR", path)
        .output()
        .unwrap();
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(json(&first)["results"], json(&second)["results"]);
}

#[test]
fn census_and_selftest() {
    let out = pdigits(&["census", "--t", "1", "--limit", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let counts: Vec<u64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["count"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, [3, 2, 2, 1, 1, 0, 1, 0, 0]);
    let out = pdigits(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}
