use std::process::{Command, Output};

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn single_entry_text() {
    let o = verify(&["--entry", "3.19", "--digits", "60"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let s = stdout(&o);
    assert!(s.starts_with("3.19 [verified] 60 digits, tol 1.00000000000e-25"));
    assert!(s.contains("1 reports: 1 verified, 0 refuted, 0 inconclusive"));
}

#[test]
fn json_output_and_report_dir() {
    let dir = tempfile::tempdir().unwrap();
    let o = verify(&[
        "--headline",
        "--entry",
        "tau1",
        "--digits",
        "60",
        "--format",
        "json",
        "--report-dir",
        dir.path().to_str().unwrap(),
        "--jobs",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["target"], "headline");
    assert_eq!(reports[1]["verdict"], "verified");
    assert_eq!(reports[0]["checks"].as_array().unwrap().len(), 6);
    for name in ["headline.json", "tau1.json"] {
        let text = std::fs::read_to_string(dir.path().join(name)).unwrap();
        let r: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(r["schema_version"], 1);
        assert_eq!(r["precision_digits"], 60);
    }
}

#[test]
fn configuration_errors_exit_2() {
    assert_eq!(verify(&["--entry", "3.24", "--digits", "60", "--tolerance", "1e-40"]).status.code(), Some(2));
    assert_eq!(verify(&["--entry", "4.01"]).status.code(), Some(2));
    assert_eq!(verify(&["--digits", "60"]).status.code(), Some(2));
    assert_eq!(verify(&["--headline", "--tolerance", "tiny"]).status.code(), Some(2));
    assert_eq!(verify(&["--headline", "--digits", "8"]).status.code(), Some(2));
}

#[test]
fn explicit_looser_tolerance() {
    let o = verify(&["--entry", "3.24", "--digits", "60", "--tolerance", "1e-20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("tol 1.00000000000e-20"));
}
