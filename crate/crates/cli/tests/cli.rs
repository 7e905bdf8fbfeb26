//! CLI contract tests: exit codes, output formats, and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treeirr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn scratch_file(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("treeirr-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn compute_star_matches_known_values() {
    let out = run(&["compute", "--family", "star:5"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 5);
    assert_eq!(v["m"], 4);
    assert_eq!(v["irr"], "12");
    assert_eq!(v["M1"], "20");
    assert_eq!(v["sigma"], "36");
    assert_eq!(v["irr_T"], "12");
    assert_eq!(v["M2"], "16");
    assert_eq!(v["F"], "68");
}

#[test]
fn compute_subset_and_unknown_index() {
    let out = run(&["compute", "--family", "path:4", "--indices", "irr,M1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["irr"], "2");
    assert_eq!(v["M1"], "10");
    assert!(v.get("sigma").is_none());
    let out = run(&["compute", "--family", "path:4", "--indices", "wiener"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compute_rejects_a_cycle_with_exit_3() {
    let path = scratch_file("cycle.txt", "3\n0 1\n1 2\n2 0\n");
    let out = run(&["compute", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(
        stderr(&out).contains("not a tree"),
        "message names the violated property: {}",
        stderr(&out)
    );
    std::fs::remove_file(path).ok();
}

#[test]
fn compute_requires_exactly_one_source() {
    assert_eq!(run(&["compute"]).status.code(), Some(2));
    let out = run(&["compute", "--family", "star:4", "--input", "x.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flags_are_errors() {
    let out = run(&["compute", "--family", "star:4", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_round_trips_through_compute() {
    let out = run(&["gen", "--family", "caterpillar:3,4"]);
    assert_eq!(out.status.code(), Some(0));
    let path = scratch_file("cat.txt", &stdout(&out));
    let out = run(&[
        "compute",
        "--input",
        path.to_str().unwrap(),
        "--indices",
        "irr",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 7);
    assert_eq!(v["irr"], "14");
    std::fs::remove_file(path).ok();
}

#[test]
fn enumerate_counts_and_cap() {
    let out = run(&["enumerate", "--n", "5", "--count-only"]);
    assert_eq!(stdout(&out).trim(), "125");
    let out = run(&["enumerate", "--n", "7", "--nonisomorphic", "--count-only"]);
    assert_eq!(stdout(&out).trim(), "11");
    let out = run(&[
        "enumerate",
        "--n",
        "4",
        "--degree-seq",
        "1,1,2,2",
        "--nonisomorphic",
        "--count-only",
    ]);
    assert_eq!(stdout(&out).trim(), "1");
    // over the default cap without --force
    let out = run(&["enumerate", "--n", "10", "--count-only"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["enumerate", "--n", "10", "--count-only", "--force"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "100000000");
}

#[test]
fn enumerate_streams_edge_lists() {
    let out = run(&["enumerate", "--n", "4", "--nonisomorphic"]);
    assert_eq!(out.status.code(), Some(0));
    let body = stdout(&out);
    let lines: Vec<&str> = body.lines().collect();
    assert_eq!(lines.len(), 2, "path and star");
    for line in lines {
        assert_eq!(line.split(' ').count(), 3, "three edges each");
    }
}

#[test]
fn verify_identity_claim_exits_zero() {
    let out = run(&["verify", "--claim", "sigma_identity", "--nmax", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[0]["verdict"], "HOLDS_ON_DOMAIN");
}

#[test]
fn verify_failing_claim_exits_one_with_counterexamples() {
    let out = run(&["verify", "--claim", "mainalb3_formula", "--nmax", "6"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[0]["verdict"], "FAILS");
    assert!(!v[0]["counterexamples"].as_array().unwrap().is_empty());
}

#[test]
fn verify_unknown_claim_exits_two() {
    let out = run(&["verify", "--claim", "no_such_claim", "--nmax", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_rejects_nmax_beyond_cap() {
    let out = run(&["verify", "--claim", "sigma_identity", "--nmax", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_reading_flag_changes_the_report() {
    let args = |reading: &str| {
        vec![
            "verify".to_string(),
            "--claim".into(),
            "mainalb3_formula".into(),
            "--nmax".into(),
            "5".into(),
            "--nonisomorphic".into(),
            "--reading".into(),
            reading.into(),
        ]
    };
    let a = run(&args("nondecreasing")
        .iter()
        .map(String::as_str)
        .collect::<Vec<_>>());
    let b = run(&args("nonincreasing")
        .iter()
        .map(String::as_str)
        .collect::<Vec<_>>());
    let va: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    let vb: serde_json::Value = serde_json::from_str(&stdout(&b)).unwrap();
    assert_eq!(va[0]["reading"], "nondecreasing");
    assert_eq!(vb[0]["reading"], "nonincreasing");
    assert_ne!(va[0]["satisfied"], vb[0]["satisfied"]);
    let out = run(&[
        "verify",
        "--claim",
        "sigma_identity",
        "--reading",
        "sideways",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_accepts_user_claims_file() {
    let path = scratch_file(
        "claims.txt",
        "# degree sum is twice the edge count\n(claim handshake all (= (sum i 1 n (d i)) (* 2 m)))\n",
    );
    let out = run(&[
        "verify",
        "--claim",
        "handshake",
        "--nmax",
        "5",
        "--claims-file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[0]["verdict"], "HOLDS_ON_DOMAIN");
    std::fs::remove_file(path).ok();
}

#[test]
fn search_requires_seed_and_is_deterministic() {
    let out = run(&[
        "search",
        "--claim",
        "thmalbn1_lower",
        "--n",
        "30",
        "--samples",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(2), "missing seed is a usage error");
    let args = [
        "search",
        "--claim",
        "thmalbn1_lower",
        "--n",
        "30",
        "--samples",
        "1000",
        "--seed",
        "42",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(
        stdout(&a),
        stdout(&b),
        "identical arguments, identical output"
    );
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn search_finds_broad_violations_quickly() {
    let out = run(&[
        "search",
        "--claim",
        "prozagn1_lower",
        "--n",
        "5",
        "--samples",
        "10",
        "--seed",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["found"], true);
    assert_eq!(v["n"], 5);
    assert!(v["edges"].as_array().unwrap().len() == 4);
}

#[test]
fn search_scope_filter_leaves_nothing_to_find() {
    // random order-12 trees are almost never stars, and stars satisfy anyway
    let out = run(&[
        "search",
        "--claim",
        "lemma1_star_irr",
        "--n",
        "12",
        "--samples",
        "1000",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["found"], false);
}

#[test]
fn registry_lists_all_claims() {
    let out = run(&["registry"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 27);
    assert!(entries.iter().any(|e| e["id"] == "sigma_identity"));
    assert!(entries.iter().all(|e| e["statement"].is_string()));
}

#[test]
fn stdout_is_data_stderr_is_progress() {
    let out = run(&["verify", "--claim", "sigma_identity", "--nmax", "5"]);
    let body = stdout(&out);
    assert!(serde_json::from_str::<serde_json::Value>(&body).is_ok());
    assert!(stderr(&out).contains("verifying"));
}
