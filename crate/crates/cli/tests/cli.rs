use std::io::Write;
use std::process::{Command, Stdio};

use ramify_cli::{run, Outcome};
use serde_json::{json, Value};

fn call(args: &[&str], stdin: &Value) -> Outcome {
    let text = stdin.to_string();
    let mut full = vec!["ramify"];
    full.extend_from_slice(args);
    run(full, move || Ok(text))
}

fn ok(args: &[&str], stdin: &Value) -> Value {
    let out = call(args, stdin);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn q2i() -> Value {
    json!({"tower": {"p": 2, "precision": 16, "steps": [{"kind": "eisenstein", "poly": ["2", "2", "1"]}]}, "poly": ["1", "0", "1"]})
}

#[test]
fn breaks_of_the_gaussian_field() {
    let v = ok(&["breaks"], &q2i());
    assert_eq!(v, json!({"different": "1", "conductor": "2", "breaks": ["2"], "class": "wild"}));
}

#[test]
fn precision_flag_overrides_the_payload() {
    let mut p = q2i();
    p["tower"].as_object_mut().unwrap().remove("precision");
    let missing = call(&["breaks"], &p);
    assert_eq!(missing.code, 1);
    assert!(missing.stderr.contains("precision"));
    assert_eq!(ok(&["breaks", "--precision", "12"], &p)["conductor"], "2");
    let low = call(&["--precision", "1", "breaks"], &q2i());
    assert_eq!(low.code, 2);
    assert!(low.stderr.contains("minimal sufficient precision"));
}

#[test]
fn exit_codes_follow_the_error_kind() {
    assert_eq!(call(&["breaks"], &json!({"nonsense": 1})).code, 1);
    assert_eq!(call(&["no-such-command"], &q2i()).code, 1);
    let bad = json!({"matrix": {"n": 3, "entries": [[1, 2, "1"], [2, 3, "2"], [1, 3, "2"]]}});
    let out = call(&["breaks"], &bad);
    assert_eq!(out.code, 3, "{}", out.stderr);
    assert!(out.stdout.is_empty());
    // a field the command does not read
    let mut extra = q2i();
    extra["r"] = json!("1");
    assert_eq!(call(&["breaks"], &extra).code, 1);
    let out = run(["ramify", "breaks"], || Err(std::io::Error::other("closed")));
    assert_eq!(out.code, 1);
}

#[test]
fn help_and_version_succeed() {
    for flag in ["--help", "--version"] {
        let out = run(["ramify", flag], || unreachable!());
        assert_eq!(out.code, 0);
        assert!(!out.stdout.is_empty());
    }
    let out = run(["ramify", "filtration", "--help"], || unreachable!());
    assert!(out.stdout.contains("--level"));
}

#[test]
fn slope_sources_are_exclusive() {
    let mut p = q2i();
    p["slopes"] = json!(["1"]);
    assert_eq!(call(&["herbrand"], &p).code, 1);
    let v = ok(&["herbrand", "--level", "3"], &json!({"slopes": ["1"]}));
    assert_eq!(v["conductor"], "2");
    assert_eq!(v["values"][0], json!({"x": "3", "phi": "4", "psi": "2"}));
}

#[test]
fn table_output_is_aligned_text() {
    let out = call(&["--format", "table", "breaks"], &q2i());
    assert_eq!(out.code, 0);
    assert!(serde_json::from_str::<Value>(&out.stdout).is_err());
    assert!(out.stdout.lines().any(|l| l.starts_with("conductor") && l.trim_end().ends_with('2')));
}

#[test]
fn partition_levels_and_modes() {
    let p = json!({"matrix": {"n": 2, "entries": [[1, 2, "1"]]}});
    let v = ok(&["partition", "--level", "2", "--mode", "closed"], &p);
    assert_eq!(v["partitions"].as_array().unwrap().len(), 1);
    assert_eq!(v["partitions"][0]["blocks"], json!([[1, 2]]));
    let v = ok(&["partition", "--level", "2", "--mode", "open"], &p);
    assert_eq!(v["partitions"][0]["blocks"], json!([[1], [2]]));
    let v = ok(&["partition", "--level", "2"], &p);
    assert_eq!(v["partitions"].as_array().unwrap().len(), 2);
    assert_eq!(call(&["partition", "--level", "-1"], &p).code, 1);
}

#[test]
fn batch_keeps_order_and_reports_the_worst_exit() {
    let queries = json!({"queries": [
        {"command": "classify", "payload": {"slopes": ["1"]}},
        {"command": "breaks", "payload": {"matrix": {"n": 2, "entries": [[1, 2, "nope"]]}}},
        {"command": "classify", "payload": {"slopes": []}},
    ]});
    let out = call(&["batch"], &queries);
    assert_eq!(out.code, 1);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let r = v["results"].as_array().unwrap();
    assert_eq!(r.len(), 3);
    assert_eq!(r[0]["output"]["class"], "wild");
    assert_eq!(r[1]["exit"], 1);
    assert_eq!(r[2]["output"]["class"], "unramified");
}

#[test]
fn binary_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ramify"))
        .arg("classify")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(br#"{"slopes": ["1/2", "1/2", "1"]}"#).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v, json!({"class": "wild", "conductor": "3"}));

    let out = Command::new(env!("CARGO_BIN_EXE_ramify"))
        .args(["classify", "--input", "/nonexistent/payload.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
