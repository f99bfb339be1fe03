use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_recoil-cover"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn group_file(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "groups", name]
        .iter()
        .collect();
    format!("matrix:{}", path.display())
}

/// `{K: a}` for the rows of a table.
fn coefficients(table: &Value) -> Vec<(Value, u64)> {
    table["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["K"].clone(), r["a"].as_u64().unwrap()))
        .collect()
}

#[test]
fn table_s4() {
    let table = json_of(&[
        "table", "--group", "S4", "--left", "1", "--right", "3", "--format", "json",
    ]);
    assert_eq!(table["group"], "S4");
    assert_eq!(table["rank"], 3);
    assert_eq!(
        coefficients(&table),
        vec![(json!([]), 1), (json!([1]), 1), (json!([1, 3]), 1)]
    );
    assert_eq!(
        table["rows"][0],
        json!({"I":[1],"J":[3],"K":[],"a":1,"lambda":[1],"components":1})
    );
}

#[test]
fn table_dihedral() {
    let table = json_of(&[
        "table", "--group", "I6", "--left", "1", "--right", "2", "--format", "json",
    ]);
    assert_eq!(
        coefficients(&table),
        vec![
            (json!([]), 2),
            (json!([1]), 2),
            (json!([1, 2]), 3),
            (json!([2]), 2)
        ]
    );
    let aliases = json_of(&[
        "table", "--group", "I6", "--left", "s", "--right", "t", "--format", "json",
    ]);
    assert_eq!(aliases, table);
}

#[test]
fn table_s3_text() {
    let out = run(&["table", "--group", "S3", "--left", "1", "--right", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Y_1·Y_1 = Y_∅ + Y_{1,2} + Y_2"), "{text}");
}

#[test]
fn full_table_omits_zero_rows() {
    let table = json_of(&["table", "--group", "S3", "--format", "json"]);
    assert_eq!(table["zero_rows_omitted"], true);
    let rows = table["rows"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["a"].as_u64().unwrap() > 0));
    let pairs: std::collections::BTreeSet<String> = rows
        .iter()
        .map(|r| format!("{}{}", r["I"], r["J"]))
        .collect();
    assert_eq!(pairs.len(), 16);
}

#[test]
fn matrix_a3_matches_s4() {
    let a3 = json_of(&[
        "table",
        "--group",
        &group_file("a3.json"),
        "--format",
        "json",
    ]);
    let s4 = json_of(&["table", "--group", "S4", "--format", "json"]);
    assert_eq!(a3["rows"], s4["rows"]);
}

#[test]
fn cover_s5() {
    let cover = json_of(&[
        "cover", "--group", "S5", "--left", "2,3", "--right", "3,4", "--target", "1,3", "--format",
        "json",
    ]);
    assert_eq!(cover["components"], 1);
    assert_eq!(cover["a"], 2);
    assert_eq!(cover["lambda"], json!([2]));
    assert_eq!(cover["status"], "covering");
}

#[test]
fn cover_empty_instance() {
    let cover = json_of(&[
        "cover", "--group", "S4", "--left", "1", "--right", "3", "--target", "2", "--format",
        "json",
    ]);
    assert_eq!(cover["a"], 0);
    assert_eq!(cover["vertices"], 0);
    assert_eq!(cover["status"], "empty_instance");
}

#[test]
fn cover_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z.dot");
    let out = run(&[
        "cover",
        "--group",
        "S4",
        "--left",
        "1",
        "--right",
        "3",
        "--target",
        "1,3",
        "--dot",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("graph "));
    assert_eq!(dot.lines().filter(|l| l.contains("[label=\"(")).count(), 5);
    assert_eq!(dot.matches("color=blue").count(), 3);
    assert_eq!(dot.matches("color=red").count(), 2);
}

#[test]
fn verify_groups() {
    for group in ["S4".to_string(), "I8".to_string(), group_file("b3.json")] {
        let out = run(&["verify", "--group", &group]);
        assert!(
            out.status.success(),
            "{group}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
        assert!(!String::from_utf8(out.stdout).unwrap().contains("FAIL"));
    }
    let report = json_of(&[
        "verify",
        "--group",
        &group_file("b3.json"),
        "--format",
        "json",
    ]);
    assert_eq!(report["order"], 48);
}

#[test]
fn monodromy_reports() {
    let report = json_of(&[
        "monodromy",
        "--group",
        "S5",
        "--left",
        "2,3",
        "--right",
        "3,4",
        "--target",
        "1,3",
    ]);
    assert!(report["orders"]["2"].as_u64().unwrap() >= 1);
    assert_eq!(report["no_braid_loops"], false);

    let report = json_of(&[
        "monodromy",
        "--group",
        "S4",
        "--left",
        "2",
        "--right",
        "3",
        "--target",
        "2,3",
    ]);
    assert_eq!(report["no_braid_loops"], true);

    let report = json_of(&[
        "monodromy",
        "--group",
        "S4",
        "--left",
        "1",
        "--right",
        "3",
        "--target",
        "2",
    ]);
    assert_eq!(
        report,
        json!({"I":[1],"J":[3],"K":[2],"braid_loops":0,"orders":{},"no_braid_loops":true})
    );
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["table", "--group", "Q4"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--group", "S0"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--group", "I1"]).status.code(), Some(2));
    assert_eq!(
        run(&["table", "--group", "S4", "--left", "7"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["table", "--group", "matrix:/no/such/file.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["cover", "--group", "S4", "--left", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["table", "--group", "S6", "--cap", "100"])
            .status
            .code(),
        Some(3)
    );

    let dir = tempfile::tempdir().unwrap();
    let affine = dir.path().join("affine.json");
    std::fs::write(&affine, r#"{"rank":3,"m":[[1,3,3],[3,1,3],[3,3,1]]}"#).unwrap();
    let group = format!("matrix:{}", affine.display());
    assert_eq!(
        run(&["verify", "--group", &group, "--cap", "500"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn output_is_deterministic() {
    let args = ["table", "--group", "S4", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["verify", "--group", "S4"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
