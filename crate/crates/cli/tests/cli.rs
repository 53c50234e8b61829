use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flopalg")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--output", "json"];
    all.extend_from_slice(args);
    serde_json::from_str(&stdout(&all)).unwrap()
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("flopalg-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn algebra_dimensions() {
    assert_eq!(json(&["algebra", "info", "--which", "lambda_con", "--k", "1"])["dimension"], 6);
    assert_eq!(json(&["algebra", "info", "--which", "gamma_con", "--k", "4", "--field", "p:3"])["dimension"], 9);
    let t = stdout(&["algebra", "info", "--which", "truncated", "--k", "2"]);
    assert!(t.contains("dimension: 10"));
    assert!(t.contains("matches lambda_con: true"));
}

#[test]
fn homtable_matches_golden() {
    let golden = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../core/tests/golden/homtable_lambda_con_1.txt"
    ))
    .unwrap();
    assert_eq!(stdout(&["homtable", "--k", "1"]), golden);
    // byte-stable across fields
    assert_eq!(stdout(&["homtable", "--k", "1", "--field", "p:7"]), golden);
}

#[test]
fn bricks_and_ar() {
    assert_eq!(json(&["bricks", "--k", "3"])["bricks"].as_array().unwrap().len(), 4);
    let dot = stdout(&["ar", "--k", "1", "--dot"]);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("shape=").count(), 6);
    assert!(json(&["orthogonality", "--k", "2"])["passed"].as_bool().unwrap());
}

#[test]
fn nccr_commands() {
    assert_eq!(stdout(&["nccr", "ext-hilbert", "--n", "2"]), "2 2 2 2\n");
    let v = json(&["nccr", "verify", "--n", "1"]);
    assert_eq!(v["passed"], true);
    let v = json(&["nccr", "verify", "--n", "0"]);
    assert!(v["massey"].is_null());
    let out = run(&["nccr", "verify", "--n", "1", "--degree", "500"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degree budget"));
}

#[test]
fn classify_commands() {
    let v = json(&["classify", "--k", "1", "--word", "", "--seed-object", "M1"]);
    assert_eq!(v["normal_form"], "M1");
    assert_eq!(v["simple"], "S1");
    assert_eq!(v["simple_word"]["letters"], "Phi2");
    let v = json(&["classify", "--k", "1", "--word", "P1 P1"]);
    assert_eq!(v["round_trip"], true);
    let v = json(&["classify", "--word", "Phi1 Phi2 Phi1", "--seed-object", "S1"]);
    assert_eq!((v["simple"].as_str(), v["shift"].as_i64()), (Some("S2"), Some(-1)));
}

#[test]
fn reduce_commands() {
    // Ext^1(S1, S2) sits in Hom(x, x[-1]) for x = S1 + S2[2]
    let obj = temp_file("neg.json", r#"[{"module": "S1"}, {"module": "S2", "shift": 2}]"#);
    let out = run(&["reduce", "--input", obj.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("negative self-extensions"));
    let obj = temp_file("braid.json", r#"[{"module": "S2", "word": "a^2 b^-2"}]"#);
    assert_eq!(json(&["reduce", "--input", obj.to_str().unwrap()])["round_trip"], true);
    let obj = temp_file("one.json", r#"{"module": "M2"}"#);
    let v = json(&["reduce", "--input", obj.to_str().unwrap()]);
    assert_eq!(v["terminal"][0], "S2");
    assert_eq!(v["round_trip"], true);
    let sh = temp_file("sh.json", r#"[[0, [["S1", 2]]], [1, ["S2"]]]"#);
    let v = json(&["reduce", "--shadow", "--k", "3", "--input", sh.to_str().unwrap()]);
    assert_eq!(v["steps"][0]["letter"]["Phi"], serde_json::json!([1, 1]));
    assert_eq!(v["steps"][0]["ambiguous"].as_array().unwrap().len(), 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bricks", "--k", "0"]).status.code(), Some(2));
    assert_eq!(run(&["bricks", "--field", "p:4"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--k", "2", "--word", "P1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["homtable", "--output", "dot"]).status.code(), Some(2));
}
