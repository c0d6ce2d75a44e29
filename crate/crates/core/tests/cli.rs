use std::process::{Command, Output};

use serde_json::Value;

fn cominimal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cominimal"))
        .args(args)
        .env("COMINIMAL_THREADS", "2")
        .output()
        .unwrap()
}

fn lines(o: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&o.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn generate_writes_file_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let o = cominimal(&[
        "generate",
        "--family",
        "S",
        "--window",
        "-20..-1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(
        v["elements"],
        serde_json::json!([-20, -18, -15, -10, -6, -4, -2])
    );
    assert_eq!(v["schema"], "1");
    let o = cominimal(&[
        "generate", "--family", "I:3", "--window", "-20..-1", "--format", "runs",
    ]);
    let v = &lines(&o)[0];
    assert_eq!(v["runs"], serde_json::json!([[-15, 1], [-10, 1]]));
}

#[test]
fn verify_suites_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("uv.jsonl");
    let o = cominimal(&[
        "verify",
        "--suite",
        "uv-claims",
        "--n",
        "2..10",
        "--report",
        report.to_str().unwrap(),
    ]);
    // The positive-power claim has a counterexample at n = 5, so the suite fails and the report is still written.
    assert_eq!(o.status.code(), Some(1));
    let text = std::fs::read_to_string(&report).unwrap();
    let failed: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap())
        .filter(|v| v["holds"] == false)
        .collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["counterexample"], -35);

    let o = cominimal(&["verify", "--suite", "st-claims", "--n", "3..10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        lines(&o)
            .iter()
            .all(|v| v["holds"] == true && v["schema"] == "1")
    );
    assert_eq!(
        cominimal(&["verify", "--suite", "uv-finiteness", "--n", "4..10"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        cominimal(&["verify", "--suite", "complement", "--window", "-4096..4096"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        cominimal(&[
            "verify",
            "--suite",
            "complement",
            "--base",
            "U",
            "--window",
            "-4096..4096"
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        cominimal(&["verify", "--suite", "minimality"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        cominimal(&["verify", "--suite", "st-claims", "--n", "1..40"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn reports_are_deterministic() {
    let a = cominimal(&["verify", "--suite", "st-claims", "--n", "3..8"]);
    let b = cominimal(&["verify", "--suite", "st-claims", "--n", "3..8"]);
    assert_eq!(a.stdout, b.stdout);
    let a = cominimal(&["refine", "--base", "U", "--budget", "60"]);
    let b = cominimal(&["refine", "--base", "U", "--budget", "60"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn refine_and_config() {
    let o = cominimal(&["refine", "--base", "S", "--budget", "64"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &lines(&o)[0];
    let retained: Vec<i64> = serde_json::from_value(v["retained"].clone()).unwrap();
    assert!(retained.contains(&-2) && retained.contains(&-4));

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"budget": 10}"#).unwrap();
    let o = cominimal(&["--config", cfg.to_str().unwrap(), "refine", "--base", "S"]);
    assert_eq!(lines(&o)[0]["budget"], 10);
    let o = cominimal(&[
        "--config",
        cfg.to_str().unwrap(),
        "refine",
        "--base",
        "S",
        "--budget",
        "12",
    ]);
    assert_eq!(lines(&o)[0]["budget"], 12);
    std::fs::write(&cfg, r#"{"budgt": 10}"#).unwrap();
    assert_eq!(
        cominimal(&["--config", cfg.to_str().unwrap(), "selftest"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn lift_commands() {
    let o = cominimal(&[
        "lift",
        "--matrix",
        "[[0,1],[1,0]]",
        "--box",
        "-64..64,-64..64",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = &lines(&o)[0];
    assert_eq!(v["coverage_ok"], true);
    assert_eq!(v["sigma"], serde_json::json!([[0, 1], [1, 0]]));
    assert_eq!(
        cominimal(&["lift", "--quadrant", "2", "--box", "-16..16"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        cominimal(&["lift", "--matrix", "[[2,0],[0,1]]"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cominimal(&[
            "lift",
            "--matrix",
            "[[1,0],[0,1]]",
            "--box",
            "-4..4,-4..4,-4..4"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn selftest_passes_with_documented_deviations() {
    let o = cominimal(&["selftest"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8_lossy(&o.stdout);
    assert_eq!(text.lines().filter(|l| l.starts_with("XFAIL")).count(), 2);
    assert!(!text.lines().any(|l| l.starts_with("FAIL")));
}
