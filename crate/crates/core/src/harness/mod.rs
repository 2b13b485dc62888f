//! Verification harness: the table registry, per-target pipelines and
//! machine-readable reports.
//!
//! Each target is evaluated in a [`PrecisionContext`] of `digits` working
//! digits and compared against a reporting tolerance that must leave at
//! least five digits of headroom below the context's accuracy.

mod pipeline;
mod registry;
mod report;

use rayon::prelude::*;
use thiserror::Error;

use crate::precision::{PrecisionContext, Tolerance, Verdict};

pub use pipeline::{
    default_tolerance, entry_pair, palindromic_octic_lift, verify_constants, verify_entry, verify_headline,
    verify_target, EXPECTED_FAILURE_FLOOR, P_COEFFS, RECOGNITION_DIGITS,
};
pub use registry::{
    EntryRecord, GaussianRecord, RationalRecord, Registry, RegistryFile, TableEntry, TauRecord, ALLOWED_DEGREES,
    REGISTRY_JSON,
};
pub use report::{
    decimal, BranchCertificateRecord, CheckRecord, Expectation, ReportBuilder, VerificationReport, RESIDUAL_DIGITS,
    SCHEMA_VERSION,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarnessError {
    #[error("registry: {0}")]
    Registry(String),
    #[error("unknown entry `{0}`")]
    UnknownEntry(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("{0}")]
    Stage(String),
}

impl HarnessError {
    pub(crate) fn stage(e: impl std::fmt::Display) -> Self {
        HarnessError::Stage(e.to_string())
    }
}

pub const DEFAULT_DIGITS: u32 = 120;
pub const MIN_HARNESS_DIGITS: u32 = 30;

#[derive(Clone, Debug, PartialEq)]
pub struct HarnessConfig {
    pub digits: u32,
    pub tolerance: Tolerance,
    /// worker threads; 0 lets rayon decide
    pub jobs: usize,
    /// run lattice recognition in the constants target
    pub recognize: bool,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig::with_digits(DEFAULT_DIGITS)
    }
}

impl HarnessConfig {
    pub fn with_digits(digits: u32) -> Self {
        HarnessConfig { digits, tolerance: default_tolerance(digits), jobs: 0, recognize: true }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.digits < MIN_HARNESS_DIGITS {
            return Err(HarnessError::Config(format!("at least {MIN_HARNESS_DIGITS} digits required, got {}", self.digits)));
        }
        PrecisionContext::new(self.digits).map_err(|e| HarnessError::Config(e.to_string()))?;
        let limit = self.digits / 2 - 5;
        if self.tolerance.digits() > limit {
            return Err(HarnessError::Config(format!(
                "tolerance {} is tighter than 1e-{limit} allowed at {} digits",
                self.tolerance, self.digits
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Headline,
    Constants,
    Entry(String),
}

impl Target {
    /// Headline, constants, then every table row in registry order.
    pub fn all(registry: &Registry) -> Vec<Target> {
        let mut v = vec![Target::Headline, Target::Constants];
        v.extend(registry.table().map(|e| Target::Entry(e.id.clone())));
        v
    }
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Target::Headline => f.write_str("headline"),
            Target::Constants => f.write_str("constants"),
            Target::Entry(id) => f.write_str(id),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunSummary {
    pub reports: Vec<VerificationReport>,
}

impl RunSummary {
    pub fn all_verified(&self) -> bool {
        self.reports.iter().all(|r| r.verdict == Verdict::Verified)
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.reports.iter().filter(|r| r.verdict == v).count()
    }
}

/// Runs the targets in parallel; reports keep the order of `targets`.
pub fn run(targets: &[Target], cfg: &HarnessConfig) -> Result<RunSummary, HarnessError> {
    cfg.validate()?;
    let registry = Registry::builtin();
    for t in targets {
        if let Target::Entry(id) = t {
            if registry.get(id).is_none() {
                return Err(HarnessError::UnknownEntry(id.clone()));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| HarnessError::Config(e.to_string()))?;
    let reports = pool.install(|| {
        targets.par_iter().map(|t| verify_target(t, cfg, &registry)).collect::<Result<Vec<_>, _>>()
    })?;
    Ok(RunSummary { reports })
}

pub fn run_all(cfg: &HarnessConfig) -> Result<RunSummary, HarnessError> {
    run(&Target::all(&Registry::builtin()), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(HarnessConfig::default().validate().is_ok());
        assert_eq!(HarnessConfig::default().tolerance, Tolerance::pow10(-40));
        assert_eq!(HarnessConfig::with_digits(60).tolerance, Tolerance::pow10(-25));
        let mut c = HarnessConfig::with_digits(60);
        c.tolerance = Tolerance::pow10(-40);
        assert!(matches!(c.validate(), Err(HarnessError::Config(_))));
        assert!(HarnessConfig::with_digits(10).validate().is_err());
    }

    #[test]
    fn unknown_entry() {
        let r = run(&[Target::Entry("9.99".into())], &HarnessConfig::default());
        assert!(matches!(r, Err(HarnessError::UnknownEntry(_))));
    }

    #[test]
    fn single_entry() {
        let cfg = HarnessConfig::with_digits(60);
        let s = run(&[Target::Entry("3.11".into())], &cfg).unwrap();
        let r = &s.reports[0];
        assert!(r.verified(), "{}", r.to_text());
        assert_eq!(r.checks.len(), 4);
    }

    #[test]
    fn expected_failure_entry() {
        let reg = Registry::builtin();
        let e = reg.get("tau1").unwrap();
        let r = verify_entry(e, &HarnessConfig::with_digits(60));
        assert!(r.verified(), "{}", r.to_text());
        assert!(r.check("hypergeometric_form_fails_above").is_some());
    }
}
