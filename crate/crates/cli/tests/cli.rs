use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn rwlogic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rwlogic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = rwlogic(&full);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn code(args: &[&str]) -> i32 {
    rwlogic(args).status.code().expect("exit code")
}

#[test]
fn generated_file_feeds_other_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid3.txt");
    let p = path.to_str().unwrap();
    let written = json(&["gen", "grid", "3", "-o", p]);
    assert_eq!(written["n"], 9);
    assert_eq!(written["m"], 12);

    let from_file = json(&["rankwidth", "-g", p, "--exact"]);
    let generated = json(&["rankwidth", "-g", "grid:3", "--exact"]);
    assert_eq!(from_file["width"], 2);
    assert_eq!(from_file, generated);

    let cut = json(&["cutrank", "-g", p, "--set", "0,1,2"]);
    assert_eq!(cut["cut_rank"], 3);
    assert_eq!(cut["complement"].as_array().unwrap().len(), 6);
}

#[test]
fn stdin_source_matches_generated_graph() {
    let text = rwlogic(&["gen", "cycle", "5"]).stdout;
    let mut child = Command::new(env!("CARGO_BIN_EXE_rwlogic"))
        .args(["--format", "json", "rankwidth", "-g", "-", "--exact"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&text).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["n"], 5);
    assert_eq!(v["width"], 2);
}

#[test]
fn decomposition_json_is_a_valid_witness() {
    let v = json(&["rankwidth", "-g", "path:6", "--exact"]);
    assert_eq!(v["width"], 1);
    let d = &v["decomposition"];
    assert_eq!(d["n"], 6);
    assert_eq!(d["edges"].as_array().unwrap().len(), 2 * 6 - 3);
    let mut labels: Vec<u64> = d["leaf_labels"]
        .as_object()
        .unwrap()
        .values()
        .map(|x| x.as_u64().unwrap())
        .collect();
    labels.sort();
    assert_eq!(labels, (0..6).collect::<Vec<_>>());
}

#[test]
fn greedy_handles_large_paths() {
    let v = json(&["rankwidth", "-g", "path:50", "--greedy"]);
    assert_eq!(v["method"], "greedy");
    assert_eq!(v["width"], 1);
}

#[test]
fn exit_codes_distinguish_usage_data_and_refusal() {
    assert_eq!(code(&["gen", "grid", "0"]), 2);
    assert_eq!(code(&["gen", "moebius", "3"]), 2);
    assert_eq!(code(&["check", "-g", "path:3", "exists x. edge(x, y)"]), 2);
    assert_eq!(code(&["check", "-g", "path:3", "exists x. ("]), 2);
    assert_eq!(code(&["check", "-g", "path:3", "--named", "planar"]), 2);
    assert_eq!(code(&["rankwidth", "-g", "grid:5", "--exact"]), 3);
    assert_eq!(code(&["trees-count", "13"]), 3);
    assert_eq!(
        code(&["rankwidth", "-g", "/nonexistent/graph.txt", "--greedy"]),
        1
    );

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "3 1\n0 7\n").unwrap();
    let out = rwlogic(&["rankwidth", "-g", bad.to_str().unwrap(), "--greedy"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("error:") && err.contains("line 2"), "{err}");
}

#[test]
fn exact_cap_bounds_enumeration() {
    assert_eq!(json(&["trees-count", "7"])["count"], 945);
    assert_eq!(code(&["--exact-cap", "5", "trees-count", "6"]), 3);
    assert_eq!(
        code(&["--exact-cap", "5", "rankwidth", "-g", "path:6", "--exact"]),
        3
    );
    assert_eq!(
        code(&["--exact-cap", "5", "rankwidth", "-g", "path:6", "--greedy"]),
        0
    );
}

#[test]
fn false_verdict_still_exits_zero() {
    let v = json(&["check", "-g", "complete:4", "--named", "two_colorable"]);
    assert_eq!(v["holds"], false);
    assert_eq!(v["witness"], 0);

    let edgeless = json(&["check", "-g", "complete:1", "--named", "path2"]);
    assert_eq!(edgeless["holds"], false);
}

#[test]
fn family_check_reports_first_failing_member() {
    let v = json(&[
        "check",
        "-g",
        "path:2",
        "-g",
        "cycle:4",
        "-g",
        "cycle:5",
        "-g",
        "cycle:3",
        "--named",
        "two_colorable",
    ]);
    assert_eq!(v["holds"], false);
    assert_eq!(v["witness"], 2);
    let holds: Vec<bool> = v["graphs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["holds"].as_bool().unwrap())
        .collect();
    assert_eq!(holds, [true, true, false, false]);

    let all = json(&[
        "check",
        "-g",
        "path:2",
        "-g",
        "path:3",
        "-g",
        "path:4",
        "--named",
        "connected",
    ]);
    assert_eq!(all["holds"], true);
    assert_eq!(all["witness"], Value::Null);
}

#[test]
fn simulate_is_reproducible_per_seed() {
    let args = [
        "--seed",
        "7",
        "--format",
        "json",
        "simulate",
        "-g",
        "grid:3",
        "--pattern",
        "4:X,0:Y,8:Z,2:X",
    ];
    let a = rwlogic(&args);
    let b = rwlogic(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 4);
    for e in entries {
        let p = e["probability"].as_f64().unwrap();
        assert!(p == 0.5 || p == 1.0, "{p}");
        let o = e["outcome"].as_i64().unwrap();
        assert!(o == 1 || o == -1);
    }
    assert_eq!(entries[0]["qubit"], 4);
    assert_eq!(entries[0]["basis"], "X");
}

#[test]
fn simulate_rejects_bad_patterns() {
    assert_eq!(
        code(&["simulate", "-g", "path:3", "--pattern", "0:X,0:Z"]),
        2
    );
    assert_eq!(code(&["simulate", "-g", "path:3", "--pattern", "5:X"]), 2);
    assert_eq!(code(&["simulate", "-g", "path:3", "--pattern", "0:W"]), 2);
}

#[test]
fn text_output_is_an_edge_list() {
    let out = rwlogic(&["gen", "path", "3"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "3 2\n0 1\n1 2\n");
}
