//! End-to-end checks of the binary: exit codes, determinism, and the
//! golden fixtures the reports must reproduce byte for byte.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn baire(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_baire"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

const DENSE2: &str = r#"[
  {"target": ":00", "r": 1},
  {"target": ":01", "r": 1},
  {"target": ":10", "r": 1},
  {"target": ":11", "r": 1}
]"#;

#[test]
fn construct_reports_the_measure_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let schedule = write(dir.path(), "dense2.json", DENSE2);
    let out = baire(&["construct", "--depth", "2", "--schedule", &schedule]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let measures: Vec<&str> = report["measures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(measures, vec!["1", "3/4", "11/16", "7/16", "3/8"]);
    assert_eq!(report["final"]["nonempty"], true);
    assert_eq!(report["final"]["dense_at_depth"], true);
    assert_eq!(report["final"]["nowhere_dense_at_depth"], true);
}

#[test]
fn construct_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let schedule = write(dir.path(), "dense2.json", DENSE2);
    let args = ["construct", "--depth", "2", "--seed", "7", "--schedule"];
    let first = baire(&[&args[..], &[schedule.as_str()]].concat());
    let second = baire(&[&args[..], &[schedule.as_str()]].concat());
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn sweep_mode_is_deterministic_and_order_independent() {
    let args = ["construct", "--sweep", "5", "--depth", "3", "--seed", "9"];
    let first = baire(&args);
    let second = baire(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let report: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    let runs = report["runs"].as_array().unwrap();
    assert_eq!(runs.len(), 5);
    for run in runs {
        assert_eq!(run["nonempty"], true);
        assert_eq!(run["dense_at_depth"], true);
        assert_eq!(run["nowhere_dense_at_depth"], true);
    }
    let keys: Vec<String> = runs.iter().map(|r| r["schedule"].to_string()).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted, "runs are sorted by schedule encoding");
}

#[test]
fn empty_schedule_echoes_the_initial_complex() {
    let dir = tempfile::tempdir().unwrap();
    let schedule = write(dir.path(), "empty.json", "[]");
    let out = baire(&["construct", "--schedule", &schedule]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["final"]["measure"], "1");
    assert_eq!(report["final"]["complex"], "F");
}

#[test]
fn repeated_entry_is_a_non_repeating_violation() {
    let dir = tempfile::tempdir().unwrap();
    let schedule = write(
        dir.path(),
        "repeat.json",
        r#"[{"stem": "00"}, {"stem": "00"}]"#,
    );
    let out = baire(&["construct", "--schedule", &schedule]);
    assert_eq!(out.status.code(), Some(3));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "precondition");
}

#[test]
fn malformed_schedule_reports_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let schedule = write(dir.path(), "bad.json", "[{\"target\": }]");
    let out = baire(&["construct", "--schedule", &schedule]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1"), "{err}");
    assert!(err.contains("column"), "{err}");
}

#[test]
fn budget_exhaustion_uses_its_own_exit_code() {
    let out = baire(&["bisect", "--point", ":01", "--max-steps", "4"]);
    assert_eq!(out.status.code(), Some(4));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "budget-exceeded");
    // The trace walked so far still comes out on stdout.
    let partial: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(partial["trace"].as_array().unwrap().len(), 4);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(baire(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(baire(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn verify_suites_pass_and_embed_the_seed() {
    let out = baire(&["verify", "metric", "--samples", "50", "--seed", "11"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["ok"], true);
    assert_eq!(report["tool"]["config"]["seed"], 11);
    for prop in report["properties"].as_array().unwrap() {
        assert_eq!(prop["failures"], 0, "property {:?}", prop["name"]);
    }
    // The carry rule echoed in the formal-distance text encoding.
    assert_eq!(report["carry_example"]["lhs"], "1@(0,5)");
    assert_eq!(report["carry_example"]["sum"], "1@(0,4)");
}

#[test]
fn verify_baire_reports_the_predicate_headline() {
    let out = baire(&["verify", "baire", "--depth", "2", "--samples", "20"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["predicate"]["exhaustive_empty"], true);
    assert_eq!(report["predicate"]["max_k_nonempty"], 3);
}

#[test]
fn export_round_trips_a_complex() {
    let dir = tempfile::tempdir().unwrap();
    let complex = r#"{"0":{"0":"E","1":"F"},"1":"F"}"#;
    let input = write(dir.path(), "complex.json", complex);
    let json_out = baire(&["export", "--input", &input]);
    assert!(json_out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&json_out.stdout).unwrap();
    assert_eq!(value, serde_json::from_str::<serde_json::Value>(complex).unwrap());

    let dot_out = baire(&["export", "--input", &input, "--format", "dot"]);
    assert!(dot_out.status.success());
    let dot = String::from_utf8_lossy(&dot_out.stdout);
    assert!(dot.starts_with("digraph complex"));
    assert_eq!(dot.matches("fillcolor=black").count(), 2);

    // Full space: a single filled box.
    let full = write(dir.path(), "full.json", "\"F\"");
    let full_dot = baire(&["export", "--input", &full, "--format", "dot"]);
    let text = String::from_utf8_lossy(&full_dot.stdout);
    assert_eq!(text.matches("shape=box").count(), 1);
}

#[test]
fn depth_two_remainder_has_a_golden_dot_rendering() {
    // The four-leaf trie for [01] ∪ [10], byte for byte.
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "remainder.json",
        r#"{"0":{"0":"E","1":"F"},"1":{"0":"F","1":"E"}}"#,
    );
    let out = baire(&["export", "--input", &input, "--format", "dot"]);
    assert!(out.status.success());
    let expected = "\
digraph complex {
  node [fontsize=10];
  n0 [shape=point];
  n1 [shape=point];
  n2 [shape=box, style=dashed, label=\"\"];
  n1 -> n2 [label=\"0\"];
  n3 [shape=box, style=filled, fillcolor=black, label=\"\"];
  n1 -> n3 [label=\"1\"];
  n0 -> n1 [label=\"0\"];
  n4 [shape=point];
  n5 [shape=box, style=filled, fillcolor=black, label=\"\"];
  n4 -> n5 [label=\"0\"];
  n6 [shape=box, style=dashed, label=\"\"];
  n4 -> n6 [label=\"1\"];
  n0 -> n4 [label=\"1\"];
}
";
    assert_eq!(String::from_utf8_lossy(&out.stdout), expected);
}

#[test]
fn export_renders_bisection_traces() {
    let dir = tempfile::tempdir().unwrap();
    let bisect = baire(&["bisect", "--point", "01:0"]);
    assert!(bisect.status.success());
    let report: serde_json::Value = serde_json::from_slice(&bisect.stdout).unwrap();
    let trace = write(dir.path(), "trace.json", &report["trace"].to_string());
    let dot = baire(&[
        "export", "--input", &trace, "--kind", "trace", "--format", "dot",
    ]);
    assert!(dot.status.success());
    let text = String::from_utf8_lossy(&dot.stdout);
    assert!(text.starts_with("digraph bisection"));
    assert!(text.contains("HIT"));
}

#[test]
fn preserve_and_transfinite_report_witnesses() {
    let out = baire(&[
        "preserve",
        "--avoid",
        ":0,01:0,11:0",
        "--seed-point",
        ":10",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["witnesses"].as_array().unwrap().len() >= 3);
    assert_eq!(report["final"]["witnesses_in_remainder"], true);

    let dir = tempfile::tempdir().unwrap();
    let segments = write(dir.path(), "segments.json", r#"[[":0"], ["01:0"]]"#);
    let out = baire(&[
        "transfinite",
        "--segments",
        &segments,
        "--seed-point",
        ":1",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["limits"].as_array().unwrap().len(), 2);

    // Seed inside the avoid list: precondition exit.
    let out = baire(&["preserve", "--avoid", ":0", "--seed-point", ":0"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn classify_reads_pointed_sets() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "pointed.json",
        r#"{"body": "E", "extras": [":0", ":1"], "holes": []}"#,
    );
    let out = baire(&["classify", "--input", &input, "--horizon", "4"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["class"], "finite(2)");

    let full = write(dir.path(), "full.json", r#"{"body": "F"}"#);
    let out = baire(&["classify", "--input", &full]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["class"], "continuum-scale");
}

#[test]
fn naturals_matches_exact_counts() {
    for (bound, expect) in [("10", 5u64), ("20", 15), ("40", 35)] {
        let out = baire(&["naturals", "--bound", bound, "--delete", "3,5"]);
        assert!(out.status.success());
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report["remainder_size"], expect);
        assert_eq!(report["empties_in_limit"], false);
    }
    let out = baire(&["naturals", "--bound", "10", "--cofinal"]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["remainder_size"], 0);
    assert_eq!(report["empties_in_limit"], true);

    let out = baire(&["naturals", "--bound", "10", "--delete", "11"]);
    assert_eq!(out.status.code(), Some(3));
}
