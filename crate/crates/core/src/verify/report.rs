use std::fmt;
use std::io;

use crate::algebra::NormKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    /// The check could not be completed (solver failure, build error, I/O).
    Incomplete,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Incomplete => "incomplete",
        }
    }

    pub fn from_bound(value: f64, tolerance: f64) -> Self {
        if value <= tolerance {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One line of a report. A row passes when `value ≤ tolerance`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub suite: String,
    pub system: String,
    /// What was measured: a norm pair such as `L2/Op`, or the name of a law.
    pub check: String,
    pub samples: usize,
    pub value: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    /// Seed of the worst sample; regenerates it in isolation.
    pub seed: u64,
}

impl ReportRow {
    pub fn new(
        suite: impl Into<String>,
        system: impl Into<String>,
        check: impl Into<String>,
        samples: usize,
        value: f64,
        tolerance: f64,
        seed: u64,
    ) -> Self {
        let verdict = if value.is_nan() {
            Verdict::Fail
        } else {
            Verdict::from_bound(value, tolerance)
        };
        Self {
            suite: suite.into(),
            system: system.into(),
            check: check.into(),
            samples,
            value,
            tolerance,
            verdict,
            seed,
        }
    }

    pub fn incomplete(
        suite: impl Into<String>,
        system: impl Into<String>,
        check: impl Into<String>,
    ) -> Self {
        Self {
            suite: suite.into(),
            system: system.into(),
            check: check.into(),
            samples: 0,
            value: f64::NAN,
            tolerance: f64::NAN,
            verdict: Verdict::Incomplete,
            seed: 0,
        }
    }

    pub fn with_verdict(mut self, verdict: Verdict) -> Self {
        self.verdict = verdict;
        self
    }
}

pub const CSV_HEADER: [&str; 8] = [
    "suite",
    "system",
    "norm_pair",
    "samples",
    "c_hat_or_residual",
    "tolerance",
    "verdict",
    "seed",
];

/// Shortest representation that reads back to the same `f64`.
fn float(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else {
        format!("{v:e}")
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerificationReport {
    pub rows: Vec<ReportRow>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, row: ReportRow) {
        self.rows.push(row);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.rows.extend(other.rows);
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.verdict == Verdict::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| r.verdict == Verdict::Fail)
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.rows.iter().filter(|r| r.verdict == verdict).count()
    }

    /// Rows of one suite.
    pub fn suite<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a ReportRow> + 'a {
        self.rows.iter().filter(move |r| r.suite == name)
    }

    /// UTF-8, LF line endings, floats in shortest round-trip form.
    pub fn write_csv<W: io::Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(CSV_HEADER)?;
        for r in &self.rows {
            w.write_record([
                r.suite.as_str(),
                r.system.as_str(),
                r.check.as_str(),
                &r.samples.to_string(),
                &float(r.value),
                &float(r.tolerance),
                r.verdict.as_str(),
                &r.seed.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }

    /// Aligned plain-text table with the same columns as the CSV.
    pub fn to_table(&self) -> String {
        let cells: Vec<[String; 8]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.suite.clone(),
                    r.system.clone(),
                    r.check.clone(),
                    r.samples.to_string(),
                    if r.value.is_nan() {
                        "-".into()
                    } else {
                        format!("{:.3e}", r.value)
                    },
                    if r.tolerance.is_nan() {
                        "-".into()
                    } else {
                        format!("{:.1e}", r.tolerance)
                    },
                    r.verdict.as_str().to_uppercase(),
                    r.seed.to_string(),
                ]
            })
            .collect();
        let mut width: Vec<usize> = CSV_HEADER.iter().map(|h| h.chars().count()).collect();
        for row in &cells {
            for (w, c) in width.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |fields: Vec<&str>| -> String {
            let padded: Vec<String> = fields
                .iter()
                .zip(&width)
                .map(|(f, w)| format!("{f}{}", " ".repeat(w - f.chars().count())))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = String::new();
        out.push_str(&line(CSV_HEADER.to_vec()));
        out.push('\n');
        out.push_str(&line(
            width
                .iter()
                .map(|w| "-".repeat(*w))
                .collect::<Vec<_>>()
                .iter()
                .map(|s| s.as_str())
                .collect(),
        ));
        out.push('\n');
        for row in &cells {
            out.push_str(&line(row.iter().map(|s| s.as_str()).collect()));
            out.push('\n');
        }
        let (p, f, i) = (
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::Incomplete),
        );
        out.push_str(&format!("\n{p} passed, {f} failed, {i} incomplete\n"));
        out
    }
}

/// Estimate of the constant in `‖ab‖_A ≤ C·(‖a‖_A‖b‖_B + ‖a‖_B‖b‖_A)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffReport {
    pub suite: String,
    pub system: String,
    pub norm_a: NormKind,
    pub norm_b: NormKind,
    pub samples: usize,
    /// Pairs whose denominator fell below the skip threshold.
    pub skipped: usize,
    /// Pairs where a norm evaluation failed.
    pub errors: usize,
    pub c_hat: f64,
    pub worst_seed: u64,
    pub threshold: f64,
}

impl DiffReport {
    pub fn passed(&self) -> bool {
        self.errors == 0 && self.c_hat <= self.threshold
    }

    pub fn norm_pair(&self) -> String {
        format!("{}/{}", self.norm_a, self.norm_b)
    }

    pub fn row(&self) -> ReportRow {
        let row = ReportRow::new(
            self.suite.clone(),
            self.system.clone(),
            self.norm_pair(),
            self.samples,
            self.c_hat,
            self.threshold,
            self.worst_seed,
        );
        if self.errors > 0 && row.verdict == Verdict::Pass {
            row.with_verdict(Verdict::Incomplete)
        } else {
            row
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> VerificationReport {
        let mut r = VerificationReport::new();
        r.push(ReportRow::new(
            "diff",
            "C[S3]",
            "L2/Op",
            1000,
            0.5,
            1.0 + 1e-9,
            17,
        ));
        r.push(ReportRow::new(
            "twisted_axioms",
            "Q8 / <i>, with comma",
            "cocycle",
            8,
            2.0,
            1e-12,
            0,
        ));
        r.push(ReportRow::incomplete("spectrum", "X", "eig"));
        r
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "suite,system,norm_pair,samples,c_hat_or_residual,tolerance,verdict,seed"
        );
        assert_eq!(lines[1], "diff,C[S3],L2/Op,1000,5e-1,1.000000001e0,pass,17");
        assert_eq!(
            lines[2],
            "twisted_axioms,\"Q8 / <i>, with comma\",cocycle,8,2e0,1e-12,fail,0"
        );
        assert_eq!(lines[3], "spectrum,X,eig,0,nan,nan,incomplete,0");
        assert!(!csv.contains('\r'));
        assert!(csv.ends_with('\n'));
    }

    #[test]
    fn csv_floats_round_trip() {
        for v in [0.1 + 0.2, 1.0 / 3.0, 1e-300, 123456.789] {
            assert_eq!(float(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn verdicts_and_table() {
        let r = sample();
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        let t = r.to_table();
        assert!(t.contains("FAIL"));
        assert!(t.ends_with("1 passed, 1 failed, 1 incomplete\n"));
        assert!(ReportRow::new("s", "x", "c", 1, f64::NAN, 1.0, 0).verdict == Verdict::Fail);
    }
}
