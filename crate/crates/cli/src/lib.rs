//! Command-line front end: reads a run configuration, runs the verification battery
//! and writes the report as CSV or as an aligned table.

pub mod config;

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use twisted_core::verify::{run_battery, Verdict, VerificationReport};

pub use config::{parse_config, parse_config_in, ConfigError, Format, RunConfig};

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Pass = 0,
    Violation = 1,
    Config = 2,
    Internal = 3,
}

impl ExitCode {
    pub fn of(report: &VerificationReport) -> Self {
        if report.count(Verdict::Fail) > 0 {
            ExitCode::Violation
        } else if report.count(Verdict::Incomplete) > 0 {
            ExitCode::Internal
        } else {
            ExitCode::Pass
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(#[from] io::Error),
}

pub fn render(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Csv => report.to_csv(),
        Format::Table => report.to_table(),
    }
}

/// Writes the report to `path`, or to stdout when there is none.
pub fn emit_report(
    report: &VerificationReport,
    format: Format,
    path: Option<&Path>,
) -> io::Result<()> {
    let text = render(report, format);
    match path {
        Some(p) => fs::write(p, text),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

/// Runs the battery on a dedicated pool when a thread count is given.
pub fn execute(config: &RunConfig) -> Result<VerificationReport, CliError> {
    match config.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Config(format!("cannot start {n} threads: {e}")))?;
            Ok(pool.install(|| run_battery(&config.suite)))
        }
        None => Ok(run_battery(&config.suite)),
    }
}

/// Runs and emits. When the output path cannot be written the report goes to
/// stdout instead and the run counts as an internal failure.
pub fn run(config: &RunConfig) -> ExitCode {
    let report = match execute(config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::Config;
        }
    };
    let code = ExitCode::of(&report);
    if let Err(e) = emit_report(&report, config.format, config.out.as_deref()) {
        eprintln!("error: cannot write report: {e}");
        if config.out.is_some() {
            let _ = emit_report(&report, config.format, None);
        }
        return if code == ExitCode::Violation {
            code
        } else {
            ExitCode::Internal
        };
    }
    code
}
