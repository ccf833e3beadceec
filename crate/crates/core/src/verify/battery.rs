use std::fmt;
use std::str::FromStr;

use super::report::{ReportRow, VerificationReport};
use super::suites::*;
use crate::algebra::{Distribution, NormKind, StarAlgebra};
use crate::error::{Error, Result};
use crate::group::{CayleyTable, ExtensionSpec, FiniteGroup, GroupExtension};
use crate::twisted::TwistedSystem;

/// Extensions exercised when a configuration names none.
pub const DEFAULT_EXTENSIONS: [&str; 5] = [
    "Q8 / <i>",
    "D4 / <r>",
    "C6 / <g^2>",
    "sd(C2 x C2 x C2, C3, cyc) / base",
    "wr(C2, 3, cyc) / base",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    GroupAxioms,
    TwistedAxioms,
    Decomposition,
    CrossedProduct,
    Symmetry,
    Srp,
    LiftedDiff,
    Covariant,
    Diff,
    LpNesting,
    Schatten,
    Fourier,
    Hstar,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::GroupAxioms,
        Suite::TwistedAxioms,
        Suite::Decomposition,
        Suite::CrossedProduct,
        Suite::Symmetry,
        Suite::Srp,
        Suite::LiftedDiff,
        Suite::Covariant,
        Suite::Diff,
        Suite::LpNesting,
        Suite::Schatten,
        Suite::Fourier,
        Suite::Hstar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::GroupAxioms => "group_axioms",
            Suite::TwistedAxioms => "twisted_axioms",
            Suite::Decomposition => "decomposition",
            Suite::CrossedProduct => "crossed_product",
            Suite::Symmetry => "symmetry",
            Suite::Srp => "srp",
            Suite::LiftedDiff => "lifted_diff",
            Suite::Covariant => "covariant",
            Suite::Diff => "diff",
            Suite::LpNesting => "lp_nesting",
            Suite::Schatten => "schatten",
            Suite::Fourier => "fourier",
            Suite::Hstar => "hstar",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Exact algebraic identities.
    pub algebraic: f64,
    /// Eigenvalue agreement, positivity and reality of spectra.
    pub spectral: f64,
    /// Slack on differential constants and norm inequalities.
    pub diff: f64,
    /// `|gelfand radius − max |λ||`.
    pub gelfand: f64,
    /// Spread of the Gelfand radii across norm kinds.
    pub cross_norm: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            algebraic: 1e-12,
            spectral: 1e-9,
            diff: 1e-9,
            gelfand: 1e-6,
            cross_norm: 2e-6,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("algebraic", self.algebraic),
            ("spectral", self.spectral),
            ("diff", self.diff),
            ("gelfand", self.gelfand),
            ("cross_norm", self.cross_norm),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "tolerance `{name}` must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleCounts {
    pub diff: usize,
    pub lifted: usize,
    pub srp: usize,
    pub symmetry: usize,
    pub lp: usize,
    pub schatten: usize,
    pub fourier: usize,
    /// Random triples for algebraic laws, spectrum agreement and the covariant pair.
    pub algebraic: usize,
}

impl Default for SampleCounts {
    fn default() -> Self {
        Self {
            diff: 1000,
            lifted: 1000,
            srp: 200,
            symmetry: 1000,
            lp: 1000,
            schatten: 1000,
            fourier: 1000,
            algebraic: 100,
        }
    }
}

impl SampleCounts {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("diff", self.diff),
            ("lifted", self.lifted),
            ("srp", self.srp),
            ("symmetry", self.symmetry),
            ("lp", self.lp),
            ("schatten", self.schatten),
            ("fourier", self.fourier),
            ("algebraic", self.algebraic),
        ] {
            if v == 0 {
                return Err(Error::InvalidArgument(format!(
                    "sample count `{name}` must be at least 1"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: SampleCounts,
    pub tolerances: Tolerances,
    pub k_max: usize,
    pub distribution: Distribution,
    pub extensions: Vec<String>,
    /// Suites to run; all of them when empty.
    pub suites: Vec<Suite>,
    /// Extra multiplication tables checked by the group-axiom suite.
    pub tables: Vec<(String, CayleyTable)>,
    pub lp_groups: Vec<String>,
    pub lp_pairs: Vec<(f64, f64)>,
    pub fourier_groups: Vec<String>,
    pub hilbert_group: String,
    pub schatten_dim: usize,
    pub schatten_p: Vec<f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: SampleCounts::default(),
            tolerances: Tolerances::default(),
            k_max: 12,
            distribution: Distribution::Gaussian,
            extensions: DEFAULT_EXTENSIONS.iter().map(|s| s.to_string()).collect(),
            suites: Vec::new(),
            tables: Vec::new(),
            lp_groups: vec!["C12".into(), "S3".into()],
            lp_pairs: vec![(2.0, 1.0), (4.0, 2.0), (f64::INFINITY, 2.0)],
            fourier_groups: vec!["C8".into(), "C2 x C4".into()],
            hilbert_group: "S3".into(),
            schatten_dim: 8,
            schatten_p: vec![1.0, 2.0, 4.0],
        }
    }
}

impl SuiteConfig {
    pub fn enabled(&self, suite: Suite) -> bool {
        self.suites.is_empty() || self.suites.contains(&suite)
    }

    /// Checks everything that can be checked without running a suite.
    pub fn validate(&self) -> Result<()> {
        self.tolerances.validate()?;
        self.samples.validate()?;
        if self.k_max < 8 {
            return Err(Error::InvalidArgument(format!(
                "k_max must be at least 8, got {}",
                self.k_max
            )));
        }
        if self.schatten_dim == 0 || self.schatten_dim > crate::algebra::MAX_MATRIX_SIZE {
            return Err(Error::InvalidArgument(format!(
                "schatten_dim must lie in 1..={}, got {}",
                crate::algebra::MAX_MATRIX_SIZE,
                self.schatten_dim
            )));
        }
        for &p in &self.schatten_p {
            NormKind::Schatten(p).validate()?;
        }
        for &(p, q) in &self.lp_pairs {
            if !(p >= q && q >= 1.0) {
                return Err(Error::InvalidArgument(format!(
                    "need p >= q >= 1, got ({p}, {q})"
                )));
            }
        }
        for spec in &self.extensions {
            spec.parse::<ExtensionSpec>()?;
        }
        for g in self
            .lp_groups
            .iter()
            .chain(&self.fourier_groups)
            .chain([&self.hilbert_group])
        {
            g.parse::<crate::group::GroupExpr>()?;
        }
        Ok(())
    }
}

fn incomplete(report: &mut VerificationReport, suite: Suite, system: &str, err: &Error) {
    report.push(ReportRow::incomplete(
        suite.name(),
        system,
        format!("error: {err}"),
    ));
}

/// Recomputes `τ(x,y)·η(xy) = η(x)·η(y)` at the first pair where τ is not the
/// identity; the row names the pair and the value of τ there.
fn cocycle_witness(ext: &GroupExtension) -> Option<ReportRow> {
    let (g, h) = (ext.total(), ext.quotient());
    let eta = ext.section();
    for x in 0..h.order() {
        for y in 0..h.order() {
            let t = ext.tau(x, y);
            if t == g.identity() {
                continue;
            }
            let lhs = g.mul(t, eta[h.mul(x, y)]);
            let rhs = g.mul(eta[x], eta[y]);
            let value = if lhs == rhs { 0.0 } else { 1.0 };
            let check = format!(
                "nontrivial cocycle: tau({}, {}) = {}",
                h.label(x),
                h.label(y),
                g.label(t)
            );
            return Some(ReportRow::new(
                "twisted_axioms",
                ext.label(),
                check,
                1,
                value,
                0.0,
                0,
            ));
        }
    }
    None
}

/// Every per-extension suite on one extension.
fn extension_rows(ext: &GroupExtension, config: &SuiteConfig, report: &mut VerificationReport) {
    let (tol, n, seed, dist) = (
        config.tolerances,
        config.samples,
        config.seed,
        config.distribution,
    );
    let name = ext.label().to_string();
    if config.enabled(Suite::GroupAxioms) {
        report.extend(verify_group_axioms(ext.total().name(), ext.total().table()));
    }
    let sys = match TwistedSystem::from_extension(ext) {
        Ok(s) => s,
        Err(e) => return incomplete(report, Suite::TwistedAxioms, &name, &e),
    };
    if config.enabled(Suite::TwistedAxioms) {
        if let Some(row) = cocycle_witness(ext) {
            report.push(row);
        }
        report.extend(verify_twisted_axioms(&sys, tol.algebraic));
    }
    if config.enabled(Suite::Decomposition) {
        match decomposition_suite(ext, n.algebraic, seed, dist, tol.algebraic, tol.spectral) {
            Ok(r) => report.extend(r),
            Err(e) => incomplete(report, Suite::Decomposition, &name, &e),
        }
    }
    if config.enabled(Suite::CrossedProduct) {
        report.extend(crossed_product_suite(
            &sys,
            n.algebraic,
            seed,
            dist,
            tol.algebraic,
        ));
    }
    if config.enabled(Suite::Symmetry) {
        report.extend(symmetry_suite(&sys, n.symmetry, seed, dist, tol.spectral));
    }
    if config.enabled(Suite::Srp) {
        let kinds = [NormKind::L1, NormKind::L2, NormKind::Operator];
        report.extend(srp_suite(
            &sys,
            &kinds,
            n.srp,
            config.k_max,
            seed,
            dist,
            tol.gelfand,
            tol.cross_norm,
        ));
    }
    if config.enabled(Suite::LiftedDiff) {
        // the coefficient constant comes first; the lift must hold with the same one
        let coeff = diff_constant_estimate(
            sys.algebra(),
            NormKind::L2,
            NormKind::Operator,
            n.diff,
            seed,
            dist,
            1.0 + tol.diff,
        );
        let certified = 1.0;
        let mut row = coeff.row();
        row.suite = "lifted_diff".into();
        row.check = format!("coefficient {}", row.check);
        report.push(row);
        let lifted = lifted_diff_check(
            &sys,
            NormKind::L2,
            NormKind::Operator,
            n.lifted,
            seed,
            dist,
            certified,
            tol.diff,
        );
        let mut row = lifted.row();
        row.system = sys.name().to_string();
        report.push(row);
    }
    if config.enabled(Suite::Covariant) {
        if let Some(split) = ext.split() {
            let result = TwistedSystem::from_extension(&split)
                .and_then(|s| covariant_suite(&s, n.algebraic, seed, dist, tol.algebraic));
            match result {
                Ok(r) => report.extend(r),
                Err(e) => incomplete(report, Suite::Covariant, &name, &e),
            }
        }
    }
}

/// Runs the per-extension suites on every spec. A spec that fails to parse or build
/// is recorded as an incomplete row and the rest still run.
pub fn run_extension_battery(specs: &[String], config: &SuiteConfig) -> VerificationReport {
    let mut report = VerificationReport::new();
    for spec in specs {
        match spec.parse::<ExtensionSpec>().and_then(|s| s.build()) {
            Ok(ext) => extension_rows(&ext.with_label(spec.trim()), config, &mut report),
            Err(e) => report.push(ReportRow::incomplete(
                "extension",
                spec.trim(),
                format!("error: {e}"),
            )),
        }
    }
    report
}

fn group(expr: &str) -> Result<FiniteGroup> {
    expr.parse()
}

/// The extension battery followed by the suites on single algebras.
pub fn run_battery(config: &SuiteConfig) -> VerificationReport {
    let (tol, n, seed, dist) = (
        config.tolerances,
        config.samples,
        config.seed,
        config.distribution,
    );
    let mut report = VerificationReport::new();
    if config.enabled(Suite::GroupAxioms) {
        for (name, table) in &config.tables {
            report.extend(verify_group_axioms(name, table));
        }
    }
    report.extend(run_extension_battery(&config.extensions, config));

    if config.enabled(Suite::Diff) {
        match group(&config.hilbert_group) {
            Ok(k) => {
                let alg = StarAlgebra::group_algebra(&k);
                for (a, b) in [
                    (NormKind::L2, NormKind::Operator),
                    (NormKind::L1, NormKind::L1),
                ] {
                    report.push(
                        diff_constant_estimate(&alg, a, b, n.diff, seed, dist, 1.0 + tol.diff)
                            .row(),
                    );
                }
            }
            Err(e) => incomplete(&mut report, Suite::Diff, &config.hilbert_group, &e),
        }
    }
    if config.enabled(Suite::Hstar) {
        match group(&config.hilbert_group) {
            Ok(k) => report.extend(hstar_suite(
                &StarAlgebra::group_algebra(&k),
                n.algebraic,
                seed,
                dist,
                tol.algebraic,
            )),
            Err(e) => incomplete(&mut report, Suite::Hstar, &config.hilbert_group, &e),
        }
    }
    if config.enabled(Suite::LpNesting) {
        for g in &config.lp_groups {
            for &(p, q) in &config.lp_pairs {
                match group(g).and_then(|k| lp_nesting_suite(&k, p, q, n.lp, seed, dist, tol.diff))
                {
                    Ok(r) => report.extend(r),
                    Err(e) => incomplete(&mut report, Suite::LpNesting, g, &e),
                }
            }
        }
    }
    if config.enabled(Suite::Schatten) {
        match schatten_suite(
            config.schatten_dim,
            &config.schatten_p,
            n.schatten,
            seed,
            dist,
            tol.diff,
        ) {
            Ok(r) => report.extend(r),
            Err(e) => incomplete(
                &mut report,
                Suite::Schatten,
                &format!("M{}", config.schatten_dim),
                &e,
            ),
        }
    }
    if config.enabled(Suite::Fourier) {
        for g in &config.fourier_groups {
            match group(g).and_then(|k| fourier_suite(&k, n.fourier, seed, dist, tol.algebraic)) {
                Ok(r) => report.extend(r),
                Err(e) => incomplete(&mut report, Suite::Fourier, g, &e),
            }
        }
    }
    report
}
