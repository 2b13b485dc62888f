//! Report determinism and serialization.

use pi520::harness::{run, HarnessConfig, Target, VerificationReport, SCHEMA_VERSION};

fn targets() -> Vec<Target> {
    ["3.13", "3.24", "3.25", "tau1"].iter().map(|id| Target::Entry(id.to_string())).chain([Target::Headline]).collect()
}

fn run_json(jobs: usize) -> Vec<String> {
    let mut cfg = HarnessConfig::with_digits(80);
    cfg.jobs = jobs;
    run(&targets(), &cfg).unwrap().reports.iter().map(|r| r.to_json_timeless()).collect()
}

#[test]
fn identical_modulo_wall_time() {
    let a = run_json(1);
    let b = run_json(4);
    let c = run_json(4);
    assert_eq!(a, b);
    assert_eq!(b, c);
}

#[test]
fn ordered_and_round_trips() {
    let summary = run(&targets(), &HarnessConfig::with_digits(80)).unwrap();
    let names: Vec<&str> = summary.reports.iter().map(|r| r.target.as_str()).collect();
    assert_eq!(names, ["3.13", "3.24", "3.25", "tau1", "headline"]);
    for r in &summary.reports {
        let back: VerificationReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(&back, r);
        assert_eq!(r.schema_version, SCHEMA_VERSION);
        let value: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert!(value["checks"][0]["residual"].is_string());
    }
    let headline = summary.reports.last().unwrap();
    let assembly = headline.check("modular_assembly_520_over_pi").unwrap();
    assert_eq!(assembly.branch_certificates.len(), 2);
}

#[test]
fn writes_one_file_per_target() {
    let dir = std::env::temp_dir().join(format!("pi520-reports-{}", std::process::id()));
    let summary = run(&targets()[..2], &HarnessConfig::with_digits(60)).unwrap();
    for r in &summary.reports {
        let path = r.write_json(&dir).unwrap();
        let back: VerificationReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(&back, r);
    }
    assert!(dir.join("3.24.json").exists());
    std::fs::remove_dir_all(&dir).unwrap();
}
