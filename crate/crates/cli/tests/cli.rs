use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn ncthick(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncthick")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = ncthick(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(schema_name: &str, args: &[&str]) {
    let instance: Value = serde_json::from_str(&stdout(args)).unwrap();
    let validator = jsonschema::validator_for(&schema(schema_name)).unwrap();
    let errors: Vec<String> = validator.iter_errors(&instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?} against {schema_name}: {errors:?}");
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["nc", "--type", "A2", "--format", "count"]), "5\n");
    assert_eq!(stdout(&["braid", "orbit", "--type", "A2", "--count"]), "3 factorizations, 1 orbit\n");
    assert_eq!(stdout(&["braid", "orbit", "--type", "A3", "--count"]), "16 factorizations, 1 orbit\n");
    assert_eq!(stdout(&["thick", "lattice", "--type", "A3", "--oracle", "--format", "count"]), "14\n");
}

#[test]
fn json_outputs_match_schemas() {
    assert_valid("nc.schema.json", &["nc", "--type", "A3"]);
    assert_valid("nc.schema.json", &["nc", "--type", "B3", "--format", "json"]);
    assert_valid("nc.schema.json", &["nc", "--type", "KRONECKER", "--bound", "2"]);
    assert_valid("braid.schema.json", &["braid", "orbit", "--type", "A3"]);
    assert_valid("hammocks.schema.json", &["arq", "knit", "--type", "A3", "--window", "-3:3", "--format", "json"]);
    assert_valid("hammocks.schema.json", &["arq", "knit", "--type", "D4"]);
    assert_valid("modules.schema.json", &["arq", "modules", "--type", "D4"]);
    assert_valid("thick.schema.json", &["thick", "lattice", "--type", "A2", "--oracle"]);
    assert_valid("thick.schema.json", &["thick", "lattice", "--type", "G2"]);
    assert_valid("kronecker.schema.json", &["kronecker", "--bound", "1", "--points", "3"]);
}

#[test]
fn schemas_reject_malformed_documents() {
    let validator = jsonschema::validator_for(&schema("nc.schema.json")).unwrap();
    assert!(!validator.is_valid(&serde_json::json!({ "type": "A2" })));
    let validator = jsonschema::validator_for(&schema("kronecker.schema.json")).unwrap();
    assert!(!validator.is_valid(&serde_json::json!({ "type": "A2", "bound": 1, "points": [], "elements": [], "hasse": [] })));
}

#[test]
fn outputs_are_deterministic() {
    let runs: &[&[&str]] = &[
        &["nc", "--type", "D4"],
        &["nc", "--type", "A3", "--format", "dot"],
        &["braid", "orbit", "--type", "B3"],
        &["arq", "knit", "--type", "A3", "--window", "-3:3", "--format", "dot"],
        &["thick", "lattice", "--type", "A3"],
        &["kronecker", "--bound", "2", "--points", "3", "--format", "dot"],
    ];
    for args in runs {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_ncthick"))
            .args(["nc", "--type", "D4"])
            .env("NC_THICK_THREADS", threads)
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run("1"), run("4"));
    let bad = Command::new(env!("CARGO_BIN_EXE_ncthick"))
        .args(["nc", "--type", "A2"])
        .env("NC_THICK_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn dot_outputs_are_graphs() {
    let dot = stdout(&["arq", "knit", "--type", "A3", "--window", "-3:3", "--format", "dot", "--check-mesh"]);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("style=dashed"));
    let dot = stdout(&["kronecker", "--bound", "1", "--points", "2", "--format", "dot"]);
    assert!(dot.starts_with("digraph") && dot.trim_end().ends_with('}'));
    let dot = stdout(&["arq", "modules", "--type", "A3", "--format", "dot"]);
    assert_eq!(dot.matches("style=dashed").count(), 3);
}

#[test]
fn usage_errors_exit_two_with_one_line() {
    let cases: &[&[&str]] = &[
        &["nc", "--type", "Q7"],
        &["nc", "--type", "A2", "--unknown"],
        &["nc"],
        &["arq", "knit", "--type", "A3", "--window", "3:-3"],
        &["arq", "knit", "--type", "A3", "--window", "nonsense"],
        &["arq", "modules", "--type", "B3"],
        &["thick", "lattice", "--type", "B2", "--oracle"],
        &["thick", "lattice", "--type", "KRONECKER"],
        &["verify", "--suite", "everything"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = ncthick(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("error: usage: "), "{args:?}: {err}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn help_exits_zero() {
    let out = ncthick(&["--help"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("verify"));
}

#[test]
fn verify_single_suites() {
    for suite in ["nc", "braid"] {
        let out = stdout(&["verify", "--suite", suite]);
        assert!(out.lines().all(|l| !l.starts_with("FAIL")));
        assert!(out.trim_end().ends_with("0 failed"));
    }
}
