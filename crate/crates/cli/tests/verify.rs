use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/corpus")
        .join(name)
}

fn relalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relalg"))
        .args(args)
        .env_remove("RELALG_BUDGET")
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("relalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn passing_suite_exits_zero() {
    let out = relalg(&["verify", corpus("acceptance.json").to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().contains("0 fail"));
}

#[test]
fn failing_suite_exits_one() {
    let out = relalg(&["verify", corpus("planted.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL"));
    assert!(text.contains("witness:"));
}

#[test]
fn malformed_input_exits_two() {
    let path = scratch("broken.json");
    std::fs::write(&path, "{ \"checks\": [ }").unwrap();
    let out = relalg(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("parse error") && err.contains("line 1"),
        "{err}"
    );

    let path = scratch("dangling.json");
    std::fs::write(
        &path,
        r#"{ "checks": [{ "op": "check_comm_monoid", "monoid": "M" }] }"#,
    )
    .unwrap();
    let out = relalg(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("`M`"));

    let out = relalg(&["verify", "/nonexistent/suite.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn structured_report_file_is_reproducible() {
    let input = corpus("acceptance.json");
    let (a, b) = (scratch("a.json"), scratch("b.json"));
    for path in [&a, &b] {
        let out = relalg(&[
            "verify",
            input.to_str().unwrap(),
            "--format",
            "structured",
            "--seed",
            "42",
            "--report",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["format"], "relalg-report/1");
    assert!(String::from_utf8(a).unwrap().contains("\"seed\": 42"));
}

#[test]
fn budget_can_come_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_relalg"))
        .args([
            "verify",
            corpus("acceptance.json").to_str().unwrap(),
            "--format",
            "structured",
        ])
        .env(
            "RELALG_BUDGET",
            r#"{ "diagram_shapes": ["terminal", "product"] }"#,
        )
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    // The document sets sizes but not shapes, so the environment's shapes apply.
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"terminal\""));
    assert!(!text.contains("\"equalizer\""));

    let out = Command::new(env!("CARGO_BIN_EXE_relalg"))
        .args(["verify", corpus("acceptance.json").to_str().unwrap()])
        .env("RELALG_BUDGET", "{ not json")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
