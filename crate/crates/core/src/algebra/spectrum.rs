use nalgebra::linalg::Schur;
use nalgebra::DMatrix;

use super::{NormKind, NormedStarAlgebra, C64};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumResult {
    /// Sorted by real part, then imaginary part.
    pub eigenvalues: Vec<C64>,
    /// `max |λ|`.
    pub radius: f64,
    /// `‖Q·T·Q† − M‖_F / ‖M‖_F` for the Schur factorization used.
    pub residual: f64,
}

pub(crate) fn sort_eigenvalues(eig: &mut [C64]) {
    eig.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Eigenvalues of a square complex matrix via the complex Schur form.
pub fn eigenvalues(m: &DMatrix<C64>) -> Result<SpectrumResult> {
    spectrum_of(m.clone())
}

pub(crate) fn spectrum_of(m: DMatrix<C64>) -> Result<SpectrumResult> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "square matrix expected");
    if n == 0 {
        return Ok(SpectrumResult {
            eigenvalues: vec![],
            radius: 0.0,
            residual: 0.0,
        });
    }
    let scale = m.norm();
    if scale == 0.0 {
        return Ok(SpectrumResult {
            eigenvalues: vec![C64::new(0.0, 0.0); n],
            radius: 0.0,
            residual: 0.0,
        });
    }
    // clustered eigenvalues (repeated irreducible blocks) can stall deflation at
    // machine epsilon; the residual below records what the looser threshold cost
    let schur = [f64::EPSILON, 1e-15, 1e-14, 1e-13, 1e-12]
        .into_iter()
        .find_map(|eps| Schur::try_new(m.clone(), eps, 1000 * n))
        .ok_or(Error::NonConvergence { dimension: n })?;
    let (q, t) = schur.unpack();
    let rebuilt = &q * &t * q.adjoint();
    let mut residual = (rebuilt - &m).norm() / scale;
    // anything left below the diagonal was not deflated
    for j in 0..n {
        for i in j + 1..n {
            residual = residual.max(t[(i, j)].norm() / scale);
        }
    }
    let mut eig: Vec<C64> = (0..n).map(|i| t[(i, i)]).collect();
    sort_eigenvalues(&mut eig);
    let radius = eig.iter().map(|l| l.norm()).fold(0.0, f64::max);
    Ok(SpectrumResult {
        eigenvalues: eig,
        radius,
        residual,
    })
}

/// Distance between two eigenvalue multisets: the larger of the two greedy
/// nearest-neighbour matchings. Infinite when the sizes differ.
pub fn match_spectra(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    fn one_way(a: &[C64], b: &[C64]) -> f64 {
        let mut used = vec![false; b.len()];
        let mut worst = 0.0f64;
        for x in a {
            let (j, d) = b
                .iter()
                .enumerate()
                .filter(|(j, _)| !used[*j])
                .map(|(j, y)| (j, (x - y).norm()))
                .min_by(|p, q| p.1.total_cmp(&q.1))
                .expect("sizes match");
            used[j] = true;
            worst = worst.max(d);
        }
        worst
    }
    one_way(a, b).max(one_way(b, a))
}

/// Result of the Gelfand iteration `r_k = ‖a^{2^k}‖^{1/2^k}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GelfandTrace {
    /// Radius estimate: the extrapolated limit when the trace allows it, else `r_{k_max}`.
    pub radius: f64,
    /// `r_0, …, r_{k_max}`.
    pub trace: Vec<f64>,
}

impl GelfandTrace {
    pub fn last(&self) -> f64 {
        *self.trace.last().expect("trace is never empty")
    }
}

/// Repeated squaring with per-step renormalization. The log of the accumulated scale
/// is carried separately so radii far from 1 neither overflow nor underflow.
///
/// `log r_k = log ρ + c/2^k + o(2^{-k})` for diagonalizable `a` with a dominant
/// eigenvalue, so the estimate `exp(2·log r_k − log r_{k−1})` removes the leading
/// error term that `r_k` alone still carries at `k = 12`.
pub fn gelfand_radius<A: NormedStarAlgebra>(
    alg: &A,
    a: &A::Element,
    kind: NormKind,
    k_max: usize,
) -> Result<GelfandTrace> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    let n0 = alg.norm(a, kind)?;
    if n0 == 0.0 {
        return Ok(GelfandTrace {
            radius: 0.0,
            trace: vec![0.0; k_max + 1],
        });
    }
    let mut trace = Vec::with_capacity(k_max + 1);
    trace.push(n0);
    // invariant: a^{2^k} = exp(log_scale)·x with ‖x‖ = 1
    let mut x = alg.scale(a, C64::new(1.0 / n0, 0.0));
    let mut log_scale = n0.ln();
    let mut zero = false;
    for k in 1..=k_max {
        if zero {
            trace.push(0.0);
            continue;
        }
        let sq = alg.multiply(&x, &x)?;
        let s = alg.norm(&sq, kind)?;
        if s == 0.0 {
            zero = true;
            trace.push(0.0);
            continue;
        }
        log_scale = 2.0 * log_scale + s.ln();
        x = alg.scale(&sq, C64::new(1.0 / s, 0.0));
        trace.push((log_scale / (1u64 << k) as f64).exp());
    }
    let last = trace[k_max];
    let prev = trace[k_max - 1];
    let radius = if last == 0.0 || prev == 0.0 {
        last
    } else {
        (2.0 * last.ln() - prev.ln()).exp()
    };
    Ok(GelfandTrace { radius, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_element, Distribution, StarAlgebra};
    use crate::group::FiniteGroup;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn diagonal_spectrum() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(3.0), c(-1.0), c(0.5)]));
        let s = eigenvalues(&m).unwrap();
        assert_eq!(s.eigenvalues, vec![c(-1.0), c(0.5), c(3.0)]);
        assert_eq!(s.radius, 3.0);
        assert!(s.residual < 1e-15);
    }

    #[test]
    fn c2_spectrum_is_character_values() {
        // f = (x, y) on C2 acts with eigenvalues (x ± y)/2
        let alg = StarAlgebra::group_algebra(&FiniteGroup::cyclic(2).unwrap());
        let f = alg.element(vec![c(3.0), c(1.0)]).unwrap();
        let s = alg.spectrum(&f).unwrap();
        assert!(match_spectra(&s.eigenvalues, &[c(2.0), c(1.0)]) < 1e-14);
    }

    #[test]
    fn unit_has_radius_one_everywhere() {
        let alg = StarAlgebra::group_algebra(&FiniteGroup::quaternion());
        for kind in [
            NormKind::L1,
            NormKind::L2,
            NormKind::Operator,
            NormKind::LINF,
        ] {
            let g = gelfand_radius(&alg, &alg.unit(), kind, 12).unwrap();
            if matches!(kind, NormKind::L1 | NormKind::Operator) {
                assert!(g.trace.iter().all(|&r| r == 1.0), "{kind}: {:?}", g.trace);
            }
            assert!((g.radius - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn nilpotent_matrix_hits_exact_zero() {
        let m4 = StarAlgebra::matrix_algebra(4).unwrap();
        let mut coeffs = vec![c(0.0); 16];
        for i in 0..4 {
            for j in i + 1..4 {
                coeffs[i * 4 + j] = c(1.0 + (i + j) as f64);
            }
        }
        let a = m4.element(coeffs).unwrap();
        let g = gelfand_radius(&m4, &a, NormKind::Operator, 12).unwrap();
        assert!(g.trace[0] > 0.0 && g.trace[1] > 0.0);
        assert!(g.trace[2..].iter().all(|&r| r == 0.0));
        assert_eq!(g.radius, 0.0);
        assert_eq!(m4.spectrum(&a).unwrap().radius, 0.0);
    }

    #[test]
    fn large_and_small_radii_do_not_overflow() {
        let m2 = StarAlgebra::matrix_algebra(2).unwrap();
        for scale in [1e-3, 10.0, 1e3] {
            let a = m2
                .element(vec![c(scale), c(1.0), c(0.0), c(0.5 * scale)])
                .unwrap();
            let g = gelfand_radius(&m2, &a, NormKind::Operator, 12).unwrap();
            assert!(g.trace.iter().all(|r| r.is_finite()));
            assert!(
                (g.radius - scale).abs() <= 1e-6 * scale,
                "{scale}: {}",
                g.radius
            );
        }
    }

    #[test]
    fn gelfand_matches_eigenvalues_on_random_elements() {
        let alg = StarAlgebra::group_algebra(&FiniteGroup::symmetric(3).unwrap());
        for seed in 0..50 {
            let a = random_element(&alg, seed, Distribution::Gaussian).unwrap();
            let rho = alg.spectrum(&a).unwrap().radius;
            for kind in [NormKind::L1, NormKind::L2, NormKind::Operator] {
                let g = gelfand_radius(&alg, &a, kind, 12).unwrap();
                assert!(
                    (g.radius - rho).abs() <= 1e-6,
                    "{seed} {kind}: {} vs {rho}",
                    g.radius
                );
            }
        }
    }
}
