use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, ValueEnum};
use pi520::harness::{default_tolerance, run, HarnessConfig, HarnessError, Registry, RunSummary, Target};
use pi520::{Tolerance, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Verify the 520/pi series, its modular reduction and the companion table.
#[derive(Debug, Parser)]
#[command(name = "verify", version)]
#[command(group(ArgGroup::new("target").required(true).multiple(true).args(["all", "entry", "headline", "constants"])))]
struct Args {
    /// headline, constants and every table entry
    #[arg(long)]
    all: bool,
    /// table entry id, e.g. 3.24 (repeatable)
    #[arg(long, value_name = "ID")]
    entry: Vec<String>,
    #[arg(long)]
    headline: bool,
    #[arg(long)]
    constants: bool,
    /// working precision in decimal digits
    #[arg(long, default_value_t = 120)]
    digits: u32,
    /// reporting tolerance, e.g. 1e-40; defaults to 10^-min(40, digits/2 - 5)
    #[arg(long, value_name = "1e-K")]
    tolerance: Option<Tolerance>,
    /// write one JSON report per target into this directory
    #[arg(long, value_name = "PATH")]
    report_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// worker threads, 0 for one per core
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// skip lattice recognition in the constants target
    #[arg(long)]
    no_recognize: bool,
}

impl Args {
    fn targets(&self, registry: &Registry) -> Vec<Target> {
        if self.all {
            return Target::all(registry);
        }
        let mut v = Vec::new();
        if self.headline {
            v.push(Target::Headline);
        }
        if self.constants {
            v.push(Target::Constants);
        }
        v.extend(self.entry.iter().cloned().map(Target::Entry));
        v
    }

    fn config(&self) -> HarnessConfig {
        HarnessConfig {
            digits: self.digits,
            tolerance: self.tolerance.unwrap_or_else(|| default_tolerance(self.digits)),
            jobs: self.jobs,
            recognize: !self.no_recognize,
        }
    }
}

fn print(summary: &RunSummary, format: Format) {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&summary.reports).expect("reports serialize"));
        }
        Format::Text => {
            for r in &summary.reports {
                print!("{}", r.to_text());
            }
            println!(
                "{} reports: {} verified, {} refuted, {} inconclusive",
                summary.reports.len(),
                summary.count(Verdict::Verified),
                summary.count(Verdict::Refuted),
                summary.count(Verdict::Inconclusive)
            );
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let targets = args.targets(&Registry::builtin());
    let summary = match run(&targets, &args.config()) {
        Ok(s) => s,
        Err(e @ (HarnessError::Config(_) | HarnessError::UnknownEntry(_))) => {
            eprintln!("verify: {e}");
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("verify: {e}");
            return ExitCode::from(1);
        }
    };
    if let Some(dir) = &args.report_dir {
        for r in &summary.reports {
            if let Err(e) = r.write_json(dir) {
                eprintln!("verify: {e}");
                return ExitCode::from(2);
            }
        }
    }
    print(&summary, args.format);
    if summary.all_verified() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
