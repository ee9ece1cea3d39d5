use std::io::Write;
use std::process::{Command, Output, Stdio};

fn spg(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_spg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut input = child.stdin.take().unwrap();
    input.write_all(stdin.unwrap_or_default()).unwrap();
    drop(input);
    child.wait_with_output().unwrap()
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8(bytes.to_vec()).unwrap()
}

#[test]
fn build_then_verify_through_stdin() {
    let doc = spg(&["build-spindle", "--dim", "1"], None);
    assert_eq!(doc.status.code(), Some(0));
    let out = spg(&["verify"], Some(&doc.stdout));
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    assert!(text(&out.stdout).contains("singleton: holds"));
}

#[test]
fn violation_exits_one() {
    let doc = spg(&["build-spindle", "--dim", "2"], None);
    let out = spg(&["verify", "--property", "endpoint-count"], Some(&doc.stdout));
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stdout).contains("FAILS (4 witnesses)"));
}

#[test]
fn transformed_spindle_passes_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let doc = spg(&["build-spindle", "--dim", "2", "--transform", "--r", "87", "--seed", "7"], None);
    assert_eq!(doc.status.code(), Some(0));
    std::fs::write(&path, &doc.stdout).unwrap();
    let p = path.to_str().unwrap();
    let out = spg(
        &["verify", "--input", p, "--property", "adjacency,strong-adjacency,endpoint-count,singleton"],
        None,
    );
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stdout));
    let stats = text(&spg(&["stats", "--input", p], None).stdout);
    assert!(stats.contains("dimension: 174"));
    let length: usize = stats
        .lines()
        .find_map(|l| l.strip_prefix("spindle_length: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(length >= 435);
}

#[test]
fn budget_exhaustion_exits_three() {
    let out = spg(
        &["build-spindle", "--dim", "3", "--transform", "--r", "2", "--seed", "1", "--max-rounds", "1"],
        None,
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(text(&out.stderr).contains("bad event"));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(spg(&["verify", "--property", "bogus"], None).status.code(), Some(2));
    assert_eq!(spg(&["stats", "--input", "/nonexistent/x.json"], None).status.code(), Some(2));
    let out = spg(&["stats"], Some(br#"{"format_version":2}"#));
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).contains("format_version"));
    let out = spg(&["stats"], Some(b"{ not json"));
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).contains("line 1"));
}

#[test]
fn dimension_reduction_refusal_exits_two() {
    let doc = spg(&["build-spindle", "--dim", "2"], None);
    let out = spg(&["verify", "--property", "dimension-reduction", "--budget", "1"], Some(&doc.stdout));
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).contains("budget"));
}

#[test]
fn restrict_emits_a_restriction() {
    let doc = spg(&["build-spindle", "--dim", "2"], None);
    let out = spg(&["restrict", "--facet", "1.1", "--input", "-"], Some(&doc.stdout));
    assert_eq!(out.status.code(), Some(0));
    let s = text(&out.stdout);
    assert!(s.contains("\"is_restriction\":true"));
    assert!(s.contains("\"dimension\": 1"));
}

#[test]
fn transform_subcommand_round_trips() {
    let doc = spg(&["build-spindle", "--dim", "1"], None);
    let out = spg(&["transform", "--r", "4", "--seed", "2"], Some(&doc.stdout));
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    let verified = spg(&["verify", "--property", "all"], Some(&out.stdout));
    assert_eq!(verified.status.code(), Some(0), "{}", text(&verified.stdout));
}

#[test]
fn sweep_and_estimate_produce_json() {
    let doc = spg(&["build-spindle", "--dim", "2"], None);
    let out = spg(
        &["sweep", "--r-list", "4,8", "--trials", "3", "--seed", "1", "--format", "json"],
        Some(&doc.stdout),
    );
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);

    let out = spg(
        &["estimate-bad-event", "--dim", "2", "--r", "8", "--trials", "200", "--seed", "1", "--format", "json"],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["trials"], 200);
    assert!(v["frequency"].as_f64().unwrap() <= 1.0);
}
