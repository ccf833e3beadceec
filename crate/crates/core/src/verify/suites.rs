use rayon::prelude::*;

use super::report::{DiffReport, ReportRow, Verdict, VerificationReport};
use super::seed::{partner, sample_seed};
use crate::algebra::{
    dual_group, gelfand_radius, match_spectra, random_element, Distribution, NormKind,
    NormedStarAlgebra, StarAlgebra, C64,
};
use crate::error::{Error, Result};
use crate::group::{CayleyTable, FiniteGroup, GroupExtension};
use crate::twisted::{CovariantRep, Decomposition, TwistedSystem};

/// Denominators below this are skipped when estimating differential constants.
pub const SKIP_DENOMINATOR: f64 = 1e-14;

/// Runs `f` on sample indices `0..n` in parallel; output order follows the index.
fn parallel<T: Send>(n: usize, f: impl Fn(u64) -> T + Sync + Send) -> Vec<T> {
    (0..n as u64).into_par_iter().map(f).collect()
}

/// Running maximum that remembers the seed of the first sample attaining it.
/// NaN counts as worse than anything.
#[derive(Clone, Copy, Debug)]
struct Worst {
    value: f64,
    seed: u64,
}

impl Worst {
    fn new() -> Self {
        Self {
            value: f64::NEG_INFINITY,
            seed: 0,
        }
    }

    fn update(&mut self, value: f64, seed: u64) {
        let v = if value.is_nan() { f64::INFINITY } else { value };
        if v > self.value {
            self.value = v;
            self.seed = seed;
        }
    }

    /// Value for the report; an empty maximum reads as 0.
    fn value(&self) -> f64 {
        if self.value == f64::NEG_INFINITY {
            0.0
        } else {
            self.value
        }
    }
}

/// Aggregates per-sample results of several checks into one row each.
struct Rows {
    suite: String,
    system: String,
    samples: usize,
    checks: Vec<(String, f64, Worst)>,
    errors: usize,
}

impl Rows {
    fn new(suite: &str, system: &str, samples: usize, checks: &[(&str, f64)]) -> Self {
        Self {
            suite: suite.into(),
            system: system.into(),
            samples,
            checks: checks
                .iter()
                .map(|(c, t)| (c.to_string(), *t, Worst::new()))
                .collect(),
            errors: 0,
        }
    }

    fn absorb(&mut self, seed: u64, values: Result<Vec<f64>>) {
        match values {
            Ok(v) => {
                for ((_, _, w), x) in self.checks.iter_mut().zip(v) {
                    w.update(x, seed);
                }
            }
            Err(_) => self.errors += 1,
        }
    }

    fn finish(self) -> VerificationReport {
        let mut report = VerificationReport::new();
        for (check, tol, w) in self.checks {
            let row = ReportRow::new(
                &self.suite,
                &self.system,
                check,
                self.samples,
                w.value(),
                tol,
                w.seed,
            );
            let row = if self.errors > 0 && row.verdict == Verdict::Pass {
                row.with_verdict(Verdict::Incomplete)
            } else {
                row
            };
            report.push(row);
        }
        report
    }
}

fn run_rows<F>(
    suite: &str,
    system: &str,
    checks: &[(&str, f64)],
    n: usize,
    master: u64,
    stream: &str,
    f: F,
) -> VerificationReport
where
    F: Fn(u64) -> Result<Vec<f64>> + Sync + Send,
{
    let results = parallel(n, |i| {
        let s = sample_seed(master, stream, i);
        (s, f(s))
    });
    let mut rows = Rows::new(suite, system, n, checks);
    for (s, r) in results {
        rows.absorb(s, r);
    }
    rows.finish()
}

/// `‖ab‖_A / (‖a‖_A‖b‖_B + ‖a‖_B‖b‖_A)`, or `None` when the denominator is negligible.
pub fn diff_ratio<A: NormedStarAlgebra>(
    alg: &A,
    a: &A::Element,
    b: &A::Element,
    norm_a: NormKind,
    norm_b: NormKind,
) -> Result<Option<f64>> {
    let den =
        alg.norm(a, norm_a)? * alg.norm(b, norm_b)? + alg.norm(a, norm_b)? * alg.norm(b, norm_a)?;
    if den < SKIP_DENOMINATOR {
        return Ok(None);
    }
    Ok(Some(alg.norm(&alg.multiply(a, b)?, norm_a)? / den))
}

fn diff_estimate<A: NormedStarAlgebra>(
    suite: &str,
    alg: &A,
    norms: (NormKind, NormKind),
    n: usize,
    seed: u64,
    dist: Distribution,
    threshold: f64,
) -> DiffReport {
    let (norm_a, norm_b) = norms;
    let label = alg.label();
    let stream = format!("{suite}/{label}/{norm_a}/{norm_b}");
    let results = parallel(n, |i| {
        let s = sample_seed(seed, &stream, i);
        let r = random_element(alg, s, dist).and_then(|a| {
            let b = random_element(alg, partner(s), dist)?;
            diff_ratio(alg, &a, &b, norm_a, norm_b)
        });
        (s, r)
    });
    let (mut worst, mut skipped, mut errors) = (Worst::new(), 0, 0);
    for (s, r) in results {
        match r {
            Ok(Some(v)) => worst.update(v, s),
            Ok(None) => skipped += 1,
            Err(_) => errors += 1,
        }
    }
    DiffReport {
        suite: suite.into(),
        system: label,
        norm_a,
        norm_b,
        samples: n,
        skipped,
        errors,
        c_hat: worst.value(),
        worst_seed: worst.seed,
        threshold,
    }
}

/// Largest observed differential ratio over `n` random pairs. Pair `i` is generated
/// from `worst_seed`-style seeds: `a` from `s`, `b` from `partner(s)`.
pub fn diff_constant_estimate<A: NormedStarAlgebra>(
    alg: &A,
    norm_a: NormKind,
    norm_b: NormKind,
    n: usize,
    seed: u64,
    dist: Distribution,
    threshold: f64,
) -> DiffReport {
    diff_estimate("diff", alg, (norm_a, norm_b), n, seed, dist, threshold)
}

/// The differential inequality in the twisted algebra with ℓ¹-over-H norms built from
/// the coefficient norms. `constant` is the one certified on the coefficient algebra;
/// the check passes when the lifted ratio stays below `constant + tol`.
#[allow(clippy::too_many_arguments)]
pub fn lifted_diff_check(
    sys: &TwistedSystem,
    coeff_a: NormKind,
    coeff_b: NormKind,
    n: usize,
    seed: u64,
    dist: Distribution,
    constant: f64,
    tol: f64,
) -> DiffReport {
    diff_estimate(
        "lifted_diff",
        sys,
        (coeff_a, coeff_b),
        n,
        seed,
        dist,
        constant + tol,
    )
}

/// Gelfand radius in every norm of `kinds` against the eigenvalue radius, and the
/// spread of the radii across norms.
#[allow(clippy::too_many_arguments)]
pub fn srp_suite<A: NormedStarAlgebra>(
    alg: &A,
    kinds: &[NormKind],
    n: usize,
    k_max: usize,
    seed: u64,
    dist: Distribution,
    gap_tol: f64,
    cross_tol: f64,
) -> VerificationReport {
    let label = alg.label();
    let names: Vec<String> = kinds.iter().map(|k| format!("gelfand {k}")).collect();
    let mut checks: Vec<(&str, f64)> = names.iter().map(|s| (s.as_str(), gap_tol)).collect();
    checks.push(("cross-norm radius spread", cross_tol));
    run_rows(
        "srp",
        &label,
        &checks,
        n,
        seed,
        &format!("srp/{label}"),
        |s| {
            let a = random_element(alg, s, dist)?;
            let rho = alg.spectrum(&a)?.radius;
            let radii = kinds
                .iter()
                .map(|&k| Ok(gelfand_radius(alg, &a, k, k_max)?.radius))
                .collect::<Result<Vec<f64>>>()?;
            let spread = radii.iter().fold(f64::NEG_INFINITY, |m, &r| m.max(r))
                - radii.iter().fold(f64::INFINITY, |m, &r| m.min(r));
            let mut out: Vec<f64> = radii.iter().map(|r| (r - rho).abs()).collect();
            out.push(spread);
            Ok(out)
        },
    )
}

/// Spectra of `b*b` for random `b` lie in `[0, ∞)` and self-adjoint elements have real
/// spectra, up to `tol`.
pub fn symmetry_suite<A: NormedStarAlgebra>(
    alg: &A,
    n: usize,
    seed: u64,
    dist: Distribution,
    tol: f64,
) -> VerificationReport {
    let label = alg.label();
    let checks = [
        ("b*b: -min Re spectrum", tol),
        ("b*b: max |Im spectrum|", tol),
        ("self-adjoint: max |Im spectrum|", tol),
    ];
    run_rows(
        "symmetry",
        &label,
        &checks,
        n,
        seed,
        &format!("symmetry/{label}"),
        |s| {
            let b = random_element(alg, s, dist)?;
            let bb = alg.multiply(&alg.adjoint(&b)?, &b)?;
            let spec = alg.spectrum(&bb)?;
            let min_re = spec
                .eigenvalues
                .iter()
                .map(|l| l.re)
                .fold(f64::INFINITY, f64::min);
            let max_im = spec
                .eigenvalues
                .iter()
                .map(|l| l.im.abs())
                .fold(0.0, f64::max);
            let half = C64::new(0.5, 0.0);
            let h = alg.linear_combination(&b, half, &alg.adjoint(&b)?, half)?;
            let sa = alg
                .spectrum(&h)?
                .eigenvalues
                .iter()
                .map(|l| l.im.abs())
                .fold(0.0, f64::max);
            Ok(vec![-min_re, max_im, sa])
        },
    )
}

/// *-algebra laws on random triples.
pub fn crossed_product_suite<A: NormedStarAlgebra>(
    alg: &A,
    n: usize,
    seed: u64,
    dist: Distribution,
    tol: f64,
) -> VerificationReport {
    let label = alg.label();
    let checks = [
        ("associativity", tol),
        ("adjoint of product", tol),
        ("involution", tol),
        ("unit", tol),
    ];
    run_rows(
        "crossed_product",
        &label,
        &checks,
        n,
        seed,
        &format!("algebra/{label}"),
        |s| {
            let a = random_element(alg, s, dist)?;
            let b = random_element(alg, partner(s), dist)?;
            let c = random_element(alg, partner(partner(s)), dist)?;
            let assoc = alg.max_abs_diff(
                &alg.multiply(&alg.multiply(&a, &b)?, &c)?,
                &alg.multiply(&a, &alg.multiply(&b, &c)?)?,
            );
            let anti = alg.max_abs_diff(
                &alg.adjoint(&alg.multiply(&a, &b)?)?,
                &alg.multiply(&alg.adjoint(&b)?, &alg.adjoint(&a)?)?,
            );
            let inv = alg.max_abs_diff(&alg.adjoint(&alg.adjoint(&a)?)?, &a);
            let u = alg.unit();
            let unit = alg
                .max_abs_diff(&alg.multiply(&u, &a)?, &a)
                .max(alg.max_abs_diff(&alg.multiply(&a, &u)?, &a));
            Ok(vec![assoc, anti, inv, unit])
        },
    )
}

/// Exhaustive twisted-action laws as report rows, one per law plus one per witness.
pub fn verify_twisted_axioms(sys: &TwistedSystem, tol: f64) -> VerificationReport {
    let c = sys.check_axioms(tol);
    let h = sys.group().order();
    let d = sys.algebra().dim();
    let mut report = VerificationReport::new();
    for (check, value, samples) in [
        ("cocycle identity", c.cocycle, h * h * h),
        ("twisted homomorphism", c.twisted_homomorphism, h * h * d),
        ("normalization", c.normalization, 2 * h + 1),
        ("omega unitary", c.unitarity, h * h),
        ("alpha automorphism", c.automorphism, h * d * d),
        ("alpha isometric", c.isometry, h * 12),
    ] {
        report.push(ReportRow::new(
            "twisted_axioms",
            sys.name(),
            check,
            samples,
            value,
            tol,
            0,
        ));
    }
    for (what, residual) in c.witnesses {
        report.push(ReportRow::new(
            "twisted_axioms",
            sys.name(),
            format!("witness: {what}"),
            1,
            residual,
            tol,
            0,
        ));
    }
    report
}

/// Group axioms of a multiplication table, with a row per violation.
pub fn verify_group_axioms(name: &str, table: &CayleyTable) -> VerificationReport {
    let n = table.order();
    let mut report = VerificationReport::new();
    let violations = table.axiom_violations();
    report.push(ReportRow::new(
        "group_axioms",
        name,
        "violations",
        n * n * n,
        violations.len() as f64,
        0.0,
        0,
    ));
    for v in violations {
        let value = match v {
            crate::group::AxiomViolation::Associativity { count, .. } => count as f64,
            _ => 1.0,
        };
        report.push(ReportRow::new(
            "group_axioms",
            name,
            format!("witness: {v}"),
            1,
            value,
            0.0,
            0,
        ));
    }
    report
}

/// Certifies the decomposition of ℂ[G] over the extension, then compares spectra on
/// both sides for `n` random elements.
pub fn decomposition_suite(
    ext: &GroupExtension,
    n: usize,
    seed: u64,
    dist: Distribution,
    algebraic_tol: f64,
    spectral_tol: f64,
) -> Result<VerificationReport> {
    let name = ext.label();
    let (dec, cert) = match Decomposition::certified(ext, algebraic_tol) {
        Ok(found) => found,
        Err(_) => {
            let dec = Decomposition::new(ext, crate::twisted::Convention::KernelFirst)?;
            let cert = dec.certify();
            (dec, cert)
        }
    };
    let basis = dec.total_algebra().dim();
    let mut report = VerificationReport::new();
    let conv = cert.convention;
    let exact = if cert.exact_round_trip { 0.0 } else { 1.0 };
    for (check, value, samples, tol) in [
        (
            format!("multiplicative [{conv}]"),
            cert.multiplicative,
            basis * basis,
            algebraic_tol,
        ),
        (
            format!("involutive [{conv}]"),
            cert.involutive,
            basis,
            algebraic_tol,
        ),
        (
            format!("isometric [{conv}]"),
            cert.isometric,
            basis + 1,
            algebraic_tol,
        ),
        ("exact round trip".to_string(), exact, basis, 0.0),
    ] {
        report.push(ReportRow::new(
            "decomposition",
            name,
            check,
            samples,
            value,
            tol,
            0,
        ));
    }
    let alg = dec.total_algebra();
    let sys = dec.system();
    report.extend(run_rows(
        "spectrum",
        name,
        &[("twisted vs group algebra eigenvalues", spectral_tol)],
        n,
        seed,
        &format!("spectrum/{name}"),
        |s| {
            let f = random_element(alg, s, dist)?;
            let a = sys.twisted_spectrum(&dec.to_twisted(&f)?)?;
            let b = alg.spectrum(&f)?;
            Ok(vec![match_spectra(&a.eigenvalues, &b.eigenvalues)])
        },
    ));
    Ok(report)
}

/// Covariance of `(U, λ)` on all basis elements and the embedding's
/// *-homomorphism property on random pairs. Needs an untwisted system.
pub fn covariant_suite(
    sys: &TwistedSystem,
    n: usize,
    seed: u64,
    dist: Distribution,
    tol: f64,
) -> Result<VerificationReport> {
    let rep = CovariantRep::new(sys)?;
    let name = sys.name();
    let (h, d) = (sys.group().order(), sys.algebra().dim());
    let mut report = VerificationReport::new();
    report.push(ReportRow::new(
        "covariant",
        name,
        "covariance",
        h * d,
        rep.covariance_residual(),
        tol,
        0,
    ));
    report.push(ReportRow::new(
        "covariant",
        name,
        "U unitary representation",
        h * h,
        rep.unitarity_residual(),
        tol,
        0,
    ));
    let checks = [
        ("embedding multiplicative", tol),
        ("embedding *-preserving", tol),
        ("coefficient operator norm", tol),
    ];
    report.extend(run_rows(
        "covariant",
        name,
        &checks,
        n,
        seed,
        &format!("covariant/{name}"),
        |s| {
            let a = random_element(sys, s, dist)?;
            let b = random_element(sys, partner(s), dist)?;
            let (ea, eb) = (rep.embed(&a)?, rep.embed(&b)?);
            let mult = rep.max_diff(&rep.embed(&sys.convolve(&a, &b)?)?, &rep.convolve(&ea, &eb));
            let star = rep.max_diff(&rep.embed(&sys.adjoint(&a)?)?, &rep.adjoint(&ea));
            let mut norm = 0.0f64;
            for (x, m) in ea.iter().enumerate() {
                let want = sys.algebra().norm(&sys.value(&a, x), NormKind::Operator)?;
                let got = m.clone().singular_values().max();
                norm = norm.max((got - want).abs() / want.max(1.0));
            }
            Ok(vec![mult, star, norm])
        },
    ));
    Ok(report)
}

/// `‖f‖_q ≤ ‖f‖_p` under the probability weight and the differential constant of
/// `Lᵖ` inside `L^q`.
pub fn lp_nesting_suite(
    k: &FiniteGroup,
    p: f64,
    q: f64,
    n: usize,
    seed: u64,
    dist: Distribution,
    tol: f64,
) -> Result<VerificationReport> {
    if p < q || q < 1.0 {
        return Err(Error::InvalidArgument(format!(
            "need p >= q >= 1, got p = {p}, q = {q}"
        )));
    }
    let alg = StarAlgebra::group_algebra(k);
    let (np, nq) = (NormKind::Lp(p), NormKind::Lp(q));
    let label = NormedStarAlgebra::label(&alg);
    let mut report = run_rows(
        "lp_nesting",
        &label,
        &[(&format!("{nq} <= {np}"), 1.0 + tol)],
        n,
        seed,
        &format!("nesting/{label}/{np}/{nq}"),
        |s| {
            let f = random_element(&alg, s, dist)?;
            Ok(vec![alg.norm(&f, nq)? / alg.norm(&f, np)?])
        },
    );
    let mut diff = diff_constant_estimate(&alg, np, nq, n, seed, dist, 1.0 + tol);
    diff.suite = "lp_nesting".into();
    report.push(diff.row());
    Ok(report)
}

/// Schatten-ideal inequality on `M_n` for each `p`, the differential constant of
/// `(Schatten(p), Operator)` on `M_n`, and its lift over the trivial system on `C4`.
pub fn schatten_suite(
    n_dim: usize,
    p_values: &[f64],
    n: usize,
    seed: u64,
    dist: Distribution,
    tol: f64,
) -> Result<VerificationReport> {
    let m = StarAlgebra::matrix_algebra(n_dim)?;
    let label = NormedStarAlgebra::label(&m);
    let lifted_sys = TwistedSystem::trivial(FiniteGroup::cyclic(4)?, m.clone());
    let mut report = VerificationReport::new();
    for &p in p_values {
        let sp = NormKind::Schatten(p);
        sp.validate()?;
        report.extend(run_rows(
            "schatten",
            &label,
            &[(&format!("{sp}(ST) <= Op(S)*{sp}(T)"), 1.0 + tol)],
            n,
            seed,
            &format!("schatten/{label}/{sp}"),
            |s| {
                let a = random_element(&m, s, dist)?;
                let b = random_element(&m, partner(s), dist)?;
                let lhs = m.norm(&m.multiply(&a, &b)?, sp)?;
                Ok(vec![
                    lhs / (m.norm(&a, NormKind::Operator)? * m.norm(&b, sp)?),
                ])
            },
        ));
        let mut diff = diff_constant_estimate(&m, sp, NormKind::Operator, n, seed, dist, 1.0 + tol);
        diff.suite = "schatten".into();
        report.push(diff.row());
        let lifted =
            lifted_diff_check(&lifted_sys, sp, NormKind::Operator, n, seed, dist, 1.0, tol);
        report.push(lifted.row());
    }
    Ok(report)
}

/// Fourier transform over an abelian group: convolution becomes pointwise product and
/// the operator norm equals the largest Fourier coefficient.
pub fn fourier_suite(
    k: &FiniteGroup,
    n: usize,
    seed: u64,
    dist: Distribution,
    tol: f64,
) -> Result<VerificationReport> {
    let dual = dual_group(k)?;
    let alg = StarAlgebra::group_algebra(k);
    let label = NormedStarAlgebra::label(&alg);
    let checks = [
        ("convolution diagonalized", tol),
        ("Op = max |fourier|", tol),
        ("inverse transform", tol),
    ];
    Ok(run_rows(
        "fourier",
        &label,
        &checks,
        n,
        seed,
        &format!("fourier/{label}"),
        |s| {
            let f = random_element(&alg, s, dist)?;
            let g = random_element(&alg, partner(s), dist)?;
            let fh = dual.fourier_transform(&alg, &f)?;
            let gh = dual.fourier_transform(&alg, &g)?;
            let fg = dual.fourier_transform(&alg, &alg.multiply(&f, &g)?)?;
            let diag = fg
                .iter()
                .zip(fh.iter().zip(&gh))
                .map(|(p, (a, b))| (p - a * b).norm())
                .fold(0.0, f64::max);
            let top = fh.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let op = (alg.norm(&f, NormKind::Operator)? - top).abs();
            let back = alg.max_abs_diff(&dual.inverse_transform(&alg, &fh)?, &f);
            Ok(vec![diag, op, back])
        },
    ))
}

/// Weighted ℓ² structure of a group algebra: `⟨ab, c⟩ = ⟨b, a*c⟩` and
/// `‖ab‖_2 ≤ ‖a‖_Op·‖b‖_2`.
pub fn hstar_suite(
    alg: &StarAlgebra,
    n: usize,
    seed: u64,
    dist: Distribution,
    tol: f64,
) -> VerificationReport {
    let label = NormedStarAlgebra::label(alg);
    let checks = [
        ("<ab,c> = <b,a*c>", tol),
        ("L2(ab) <= Op(a)*L2(b)", 1.0 + tol),
    ];
    run_rows(
        "hstar",
        &label,
        &checks,
        n,
        seed,
        &format!("hstar/{label}"),
        |s| {
            let a = random_element(alg, s, dist)?;
            let b = random_element(alg, partner(s), dist)?;
            let c = random_element(alg, partner(partner(s)), dist)?;
            let lhs = alg.inner(&alg.multiply(&a, &b)?, &c)?;
            let rhs = alg.inner(&b, &alg.multiply(&alg.adjoint(&a)?, &c)?)?;
            let ratio = alg.norm(&alg.multiply(&a, &b)?, NormKind::L2)?
                / (alg.norm(&a, NormKind::Operator)? * alg.norm(&b, NormKind::L2)?);
            Ok(vec![(lhs - rhs).norm(), ratio])
        },
    )
}
