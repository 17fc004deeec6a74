use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sharpbound"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn verify_examples_and_exit_codes() {
    let out = run(&[
        "verify",
        "--expr",
        "6*x^2-6*x+1",
        "--interval",
        "0",
        "1",
        "--theorem",
        "thm3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let r = &v["reports"][0];
    assert_eq!(r["theorem_id"], "thm3");
    assert!((r["sharpness_ratio"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(v["config_echo"]["subcommand"], "verify");
    assert!(v["tool_version"].is_string());

    let out = run(&[
        "verify",
        "--expr",
        "0",
        "--interval",
        "0",
        "1",
        "--theorem",
        "all",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let reports = json(&out)["reports"].as_array().unwrap().clone();
    assert_eq!(reports.len(), 8);
    assert!(reports.iter().all(|r| r["satisfied"] == true));

    let out = run(&[
        "verify",
        "--expr",
        "sin(x)",
        "--interval",
        "0",
        "6.283185307179586",
        "--theorem",
        "higher",
        "--n",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let r = &json(&out)["reports"][0];
    assert_eq!(r["satisfied"], false);
    assert_eq!(r["hypotheses_met"], true);
}

#[test]
fn unmet_hypotheses_do_not_fail_verify() {
    // f(0) f(1) < 0, so thm3's hypotheses fail and the verdict is informational
    let out = run(&["verify", "--expr", "x - 0.5", "--theorem", "thm3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["reports"][0]["hypotheses_met"], false);
}

#[test]
fn floats_carry_seventeen_significant_digits() {
    let out = run(&[
        "verify",
        "--expr",
        "sin(x)",
        "--interval",
        "0",
        "2pi",
        "--theorem",
        "thm1",
    ]);
    let text = stdout(&out);
    assert!(text.contains("\"b\": 6.2831853071795862e0"), "{text}");
    let v = json(&out);
    assert_eq!(
        v["reports"][0]["interval"]["b"].as_f64(),
        Some(2.0 * std::f64::consts::PI)
    );
}

#[test]
fn center_flag_shifts_the_mean() {
    let out = run(&["verify", "--expr", "x^2", "--center", "--theorem", "thm6"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["reports"][0];
    assert!(r["hypotheses"]["mean_zero"]["holds"].as_bool().unwrap());
}

#[test]
fn csv_and_markdown_formats() {
    let out = run(&[
        "verify",
        "--expr",
        "6*x^2-6*x+1",
        "--theorem",
        "thm3,thm6",
        "--format",
        "csv",
    ]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines
        .next()
        .unwrap()
        .starts_with("theorem_id,function,a,b,lhs,rhs"));
    assert_eq!(text.lines().count(), 3);

    let out = run(&["bounds", "--expr", "6*x^2-6*x+1", "--format", "markdown"]);
    let text = stdout(&out);
    assert!(text.starts_with("| function | a | b | t_rap | classic | new | tighter |"));
    assert!(text.contains("| tie |"));
}

#[test]
fn bounds_over_a_corpus() {
    let out = run(&[
        "bounds",
        "--family",
        "exp",
        "--targets",
        "convex",
        "--trials",
        "5",
        "--seed",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out)["reports"].as_array().unwrap().clone();
    assert_eq!(rows.len(), 5);
    for r in rows {
        assert_eq!(r["classic_holds"], true);
        assert!(r["tighter"].is_string());
    }
}

#[test]
fn audit_table() {
    let out = run(&["audit", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for (id, confirmed) in [
        ("thm2", "true"),
        ("thm3", "true"),
        ("thm4", "false"),
        ("thm5", "true"),
        ("thm6", "true"),
    ] {
        let line = text.lines().find(|l| l.starts_with(id)).unwrap();
        assert!(line.ends_with(confirmed), "{line}");
    }
    let out = run(&["audit", "--theorem", "thm1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn mine_reports_and_exit_codes() {
    let out = run(&[
        "mine",
        "--family",
        "poly",
        "--targets",
        "convex,mean-zero",
        "--trials",
        "20",
        "--theorem",
        "thm3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["reports"], Value::Array(vec![]));
    assert_eq!(v["summary"][0]["checked"], 20);

    let out = run(&[
        "mine",
        "--family",
        "trig",
        "--targets",
        "mean-zero",
        "--theorem",
        "higher",
        "--trials",
        "30",
        "--seed",
        "1",
        "--format",
        "markdown",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.contains("### records") && text.contains("### summary"));
}

#[test]
fn mine_output_is_reproducible_and_written_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let args = |p: &str| {
        vec![
            "mine",
            "--family",
            "trig",
            "--targets",
            "mean-zero",
            "--theorem",
            "higher,thm1",
            "--trials",
            "25",
            "--seed",
            "9",
            "--format",
            "csv",
            "--output",
        ]
        .into_iter()
        .map(String::from)
        .chain([p.to_string()])
        .collect::<Vec<_>>()
    };
    let first = args(path.to_str().unwrap());
    run(&first.iter().map(String::as_str).collect::<Vec<_>>());
    let a = std::fs::read(&path).unwrap();
    run(&first.iter().map(String::as_str).collect::<Vec<_>>());
    let b = std::fs::read(&path).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
    let leftovers: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(leftovers.len(), 1);
}

#[test]
fn timestamp_header_is_opt_in() {
    let plain = run(&[
        "verify",
        "--expr",
        "x",
        "--theorem",
        "thm6",
        "--format",
        "csv",
    ]);
    assert!(stdout(&plain).starts_with("theorem_id"));
    let stamped = run(&[
        "verify",
        "--expr",
        "x",
        "--theorem",
        "thm6",
        "--format",
        "csv",
        "--timestamp",
    ]);
    let text = stdout(&stamped);
    assert!(text.starts_with("# generated-at-unix: "));
    assert_eq!(
        text.lines().skip(1).collect::<Vec<_>>(),
        stdout(&plain).lines().collect::<Vec<_>>()
    );
}

#[test]
fn usage_and_parse_errors_exit_one() {
    for args in [
        vec!["verify", "--expr", "6*x^"],
        vec!["verify", "--expr", "x", "--interval", "1", "0"],
        vec!["verify", "--expr", "x", "--theorem", "thm9"],
        vec!["verify", "--expr", "x", "--family", "poly"],
        vec!["verify"],
        vec!["verify", "--expr", "x", "--bogus"],
        vec!["mine", "--theorem", "thm3"],
        vec!["verify", "--expr", "abs(x)", "--theorem", "thm3"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
