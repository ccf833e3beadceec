//! Numerical suites turning norm inequalities, spectral-radius agreement and
//! positivity of spectra into falsifiable checks with explicit tolerances.

mod battery;
mod report;
mod seed;
mod suites;

pub use battery::{
    run_battery, run_extension_battery, SampleCounts, Suite, SuiteConfig, Tolerances,
    DEFAULT_EXTENSIONS,
};
pub use report::{DiffReport, ReportRow, Verdict, VerificationReport, CSV_HEADER};
pub use seed::{partner, sample_seed};
pub use suites::*;
