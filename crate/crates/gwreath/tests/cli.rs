//! Binary-level checks: exit codes, diagnostics, and file-driven input.

use std::process::{Command, Output};

fn gwreath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwreath"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn unknown_subcommand_exits_64() {
    let out = gwreath(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(64));
    let diag: serde_json::Value =
        serde_json::from_slice(&out.stderr).expect("stderr is one JSON line");
    assert_eq!(diag["error"], "unknown-subcommand");
}

#[test]
fn validation_error_exits_2_with_json_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing-root.json");
    std::fs::write(&path, "[[0]]").unwrap();
    let out = gwreath(&["reduce", "tree", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert_eq!(stderr.lines().count(), 1);
    let diag: serde_json::Value = serde_json::from_str(stderr.trim()).unwrap();
    assert_eq!(diag["error"], "not-prefix-closed");
}

#[test]
fn cap_error_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two.json");
    std::fs::write(&path, "[[],[0]]").unwrap();
    let out = gwreath(&[
        "reduce",
        "tree",
        "--in",
        path.to_str().unwrap(),
        "--factor",
        "A5",
        "--degree-cap",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let diag: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["error"], "degree-cap");
}

#[test]
fn hopf_analyze_reports_chain_length_3() {
    let out = gwreath(&["hopf", "analyze", "--order", "chain:2", "--factor", "Z2"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["chain_length"], 3);
    assert_eq!(report["group_order"], "8");
    assert_eq!(report["hopfian"]["hopfian"], true);
}

#[test]
fn wreath_order_small() {
    let out = gwreath(&["wreath", "order", "--poset", "chain:2", "--factor", "Z2"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["order"], "8");
    assert_eq!(report["degree"], 4);
}

#[test]
fn wreath_build_from_instance_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("instance.json");
    std::fs::write(
        &path,
        r#"{"poset": {"elements": ["x", "y"], "covers": [["x", "y"]]},
            "factors": [{"builtin": "Z3"}, {"builtin": "Z2"}]}"#,
    )
    .unwrap();
    let out = gwreath(&["wreath", "build", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["degree"], 6);
    assert_eq!(report["factors"], serde_json::json!(["Z3", "Z2"]));
    // small instances spell generators out as image arrays
    let gens = report["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 3);
    assert_eq!(gens[0]["images"].as_array().unwrap().len(), 6);
}

#[test]
fn quotient_check_single_gamma() {
    let out = gwreath(&[
        "wreath",
        "quotient-check",
        "--poset",
        "chain:2",
        "--factor",
        "Z2",
        "--gamma",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["checks"][0]["ok"], true);
    // a non-downward-closed gamma is a validation error
    let out = gwreath(&[
        "wreath",
        "quotient-check",
        "--poset",
        "chain:2",
        "--factor",
        "Z2",
        "--gamma",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_group_builtin() {
    let out = gwreath(&["oracle", "group", "--name", "D4"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["size"], 8);
    assert_eq!(report["normal_subgroup_count"], 6);
    assert_eq!(report["hopfian"]["verdict"], true);
}

#[test]
fn dot_format_for_lattice_commands() {
    let out = gwreath(&[
        "wreath",
        "normal-subgroups",
        "--poset",
        "chain:2",
        "--factor",
        "Z2",
        "--format",
        "dot",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    // unsupported combination is a validation error
    let out = gwreath(&[
        "wreath",
        "order",
        "--poset",
        "chain:2",
        "--factor",
        "Z2",
        "--format",
        "dot",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn text_format_is_compact() {
    let out = gwreath(&[
        "wreath",
        "order",
        "--poset",
        "chain:2",
        "--factor",
        "Z2",
        "--format",
        "text",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "8");
}
