use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::modular::BranchCertificate;
use crate::precision::{residual_verdict, Verdict};
use crate::scalar::{BigFloat, Real};

pub const SCHEMA_VERSION: u32 = 1;
/// Significant digits in serialized residuals.
pub const RESIDUAL_DIGITS: usize = 12;

/// How a residual is compared with its threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    /// verified when `residual <= tolerance`
    AtMost,
    /// verified when `residual > tolerance`; used for expected failures
    AtLeast,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub residual: String,
    pub tolerance: String,
    pub expect: Expectation,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default)]
    pub branch_certificates: Vec<BranchCertificateRecord>,
}

/// Serialized [`BranchCertificate`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchCertificateRecord {
    pub display: String,
    pub radicals: Vec<String>,
    pub choices: Vec<u32>,
    pub log10_residual: String,
}

impl From<&BranchCertificate> for BranchCertificateRecord {
    fn from(c: &BranchCertificate) -> Self {
        BranchCertificateRecord {
            display: c.display.clone(),
            radicals: c.radicals.clone(),
            choices: c.choices.clone(),
            log10_residual: format!("{:.2}", c.log10_residual),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub target: String,
    pub description: String,
    pub checks: Vec<CheckRecord>,
    pub precision_digits: u32,
    pub tolerance: String,
    pub verdict: Verdict,
    pub wall_ms: u64,
}

impl VerificationReport {
    pub fn verified(&self) -> bool {
        self.verdict == Verdict::Verified
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with `wall_ms` zeroed, for reproducibility comparisons.
    pub fn to_json_timeless(&self) -> String {
        let mut r = self.clone();
        r.wall_ms = 0;
        r.to_json()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} [{}] {} digits, tol {}, {} ms",
            self.target, self.verdict, self.precision_digits, self.tolerance, self.wall_ms
        );
        if !self.description.is_empty() {
            let _ = writeln!(s, "  {}", self.description);
        }
        for c in &self.checks {
            let op = match c.expect {
                Expectation::AtMost => "<=",
                Expectation::AtLeast => ">",
            };
            let _ = write!(s, "  {:<10} {:<32} {} {} {}", c.verdict.to_string(), c.name, c.residual, op, c.tolerance);
            if let Some(e) = &c.error {
                let _ = write!(s, "  ({e})");
            }
            s.push('\n');
        }
        s
    }

    pub fn file_name(&self) -> String {
        let safe: String = self.target.chars().map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '-' { c } else { '_' }).collect();
        format!("{safe}.json")
    }

    pub fn write_json(&self, dir: &Path) -> Result<PathBuf, HarnessError> {
        std::fs::create_dir_all(dir).map_err(|e| HarnessError::Io(e.to_string()))?;
        let path = dir.join(self.file_name());
        std::fs::write(&path, self.to_json() + "\n").map_err(|e| HarnessError::Io(e.to_string()))?;
        Ok(path)
    }
}

pub fn decimal(v: &BigFloat) -> String {
    if v.is_finite() {
        v.to_sci(RESIDUAL_DIGITS)
    } else {
        "nan".into()
    }
}

/// Accumulates checks for one target.
pub struct ReportBuilder {
    target: String,
    description: String,
    digits: u32,
    tol: BigFloat,
    checks: Vec<CheckRecord>,
    start: std::time::Instant,
}

impl ReportBuilder {
    pub fn new(target: impl Into<String>, digits: u32, tol: BigFloat) -> Self {
        ReportBuilder {
            target: target.into(),
            description: String::new(),
            digits,
            tol,
            checks: Vec::new(),
            start: std::time::Instant::now(),
        }
    }

    pub fn describe(&mut self, d: impl Into<String>) {
        self.description = d.into();
    }

    pub fn tolerance(&self) -> &BigFloat {
        &self.tol
    }

    /// `residual <= tol` with the report tolerance.
    pub fn at_most(&mut self, name: &str, residual: &BigFloat) -> Verdict {
        let tol = self.tol.clone();
        self.at_most_with(name, residual, &tol, &[])
    }

    pub fn at_most_with(&mut self, name: &str, residual: &BigFloat, tol: &BigFloat, certs: &[BranchCertificate]) -> Verdict {
        let verdict = residual_verdict(residual, tol);
        self.push(name, residual, tol, Expectation::AtMost, verdict, certs);
        verdict
    }

    /// `residual > floor`.
    pub fn at_least(&mut self, name: &str, residual: &BigFloat, floor: &BigFloat) -> Verdict {
        let verdict = if !residual.is_finite() {
            Verdict::Inconclusive
        } else if residual > floor {
            Verdict::Verified
        } else {
            Verdict::Refuted
        };
        self.push(name, residual, floor, Expectation::AtLeast, verdict, &[]);
        verdict
    }

    /// A stage that could not be evaluated.
    pub fn failed(&mut self, name: &str, err: impl std::fmt::Display) {
        self.checks.push(CheckRecord {
            name: name.into(),
            residual: "nan".into(),
            tolerance: decimal(&self.tol),
            expect: Expectation::AtMost,
            verdict: Verdict::Inconclusive,
            error: Some(err.to_string()),
            branch_certificates: Vec::new(),
        });
    }

    /// Record an outcome that is either as predicted (residual 0) or not.
    pub fn predicate(&mut self, name: &str, holds: bool, note: impl Into<String>) {
        let verdict = if holds { Verdict::Verified } else { Verdict::Refuted };
        self.checks.push(CheckRecord {
            name: name.into(),
            residual: if holds { "0" } else { "1" }.into(),
            tolerance: "0".into(),
            expect: Expectation::AtMost,
            verdict,
            error: Some(note.into()).filter(|s: &String| !s.is_empty()),
            branch_certificates: Vec::new(),
        });
    }

    /// Append a check computed elsewhere.
    pub fn push_record(&mut self, c: CheckRecord) {
        self.checks.push(c);
    }

    fn push(&mut self, name: &str, residual: &BigFloat, tol: &BigFloat, expect: Expectation, verdict: Verdict, certs: &[BranchCertificate]) {
        self.checks.push(CheckRecord {
            name: name.into(),
            residual: decimal(residual),
            tolerance: decimal(tol),
            expect,
            verdict,
            error: None,
            branch_certificates: certs.iter().map(Into::into).collect(),
        });
    }

    pub fn finish(self) -> VerificationReport {
        let verdict = if self.checks.iter().all(|c| c.verdict == Verdict::Verified) && !self.checks.is_empty() {
            Verdict::Verified
        } else if self.checks.iter().any(|c| c.verdict == Verdict::Refuted) {
            Verdict::Refuted
        } else {
            Verdict::Inconclusive
        };
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            target: self.target,
            description: self.description,
            checks: self.checks,
            precision_digits: self.digits,
            tolerance: decimal(&self.tol),
            verdict,
            wall_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_verdict_and_round_trip() {
        let tol = BigFloat::pow10(-40, 300);
        let mut b = ReportBuilder::new("demo", 120, tol);
        b.at_most("small", &BigFloat::pow10(-50, 300));
        b.at_least("gap", &BigFloat::pow10(-1, 300), &BigFloat::pow10(-3, 300));
        let r = b.finish();
        assert!(r.verified());
        let back: VerificationReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.check("small").unwrap().residual.starts_with("1.0000"));

        let mut b = ReportBuilder::new("demo", 120, BigFloat::pow10(-40, 300));
        b.at_most("big", &BigFloat::pow10(-3, 300));
        b.failed("broken", "no value");
        assert_eq!(b.finish().verdict, Verdict::Refuted);
    }
}
