use std::process::Command;

fn logjet(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_logjet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn body(stdout: &[u8]) -> serde_json::Value {
    let full: serde_json::Value = serde_json::from_slice(stdout).expect("json report");
    full["report"].clone()
}

#[test]
fn homotopy_window_passes_with_exit_zero() {
    let out = logjet(&[
        "--suite",
        "homotopy",
        "--max-degree",
        "2",
        "--max-weight",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = body(&out.stdout);
    assert_eq!(report["passed"], true);
    assert_eq!(report["suites"][0]["suite"], "homotopy");
    assert_eq!(report["suites"][0]["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn non_prime_is_a_usage_error() {
    let out = logjet(&["--p", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not prime"));
    assert_eq!(logjet(&["--max-weight", "many"]).status.code(), Some(2));
}

#[test]
fn help_exits_cleanly() {
    let out = logjet(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("--max-degree"));
}

#[test]
fn report_file_body_is_reproducible() {
    let dir = std::env::temp_dir().join(format!("logjet-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    for (path, jobs) in [(&a, "1"), (&b, "3")] {
        let out = logjet(&[
            "--p",
            "3",
            "--n",
            "2",
            "--suite",
            "relations",
            "--jobs",
            jobs,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let ra = body(&std::fs::read(&a).unwrap());
    let rb = body(&std::fs::read(&b).unwrap());
    assert_eq!(ra, rb);
    assert_eq!(ra["config"]["p"], 3);
    std::fs::remove_dir_all(&dir).unwrap();
}
