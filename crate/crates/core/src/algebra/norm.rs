use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use super::C64;
use crate::error::{Error, Result};

/// Which norm to measure an algebra element with.
///
/// `Lp` is the weighted sequence norm `(Σ_t w·|f(t)|ᵖ)^{1/p}` (max for `p = ∞`), where
/// `w` is the algebra's Haar weight. `Operator` and `Schatten` are computed from the
/// singular values of the left-regular matrix (group algebras) or of the matrix itself.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormKind {
    Lp(f64),
    Operator,
    Schatten(f64),
}

impl NormKind {
    pub const L1: NormKind = NormKind::Lp(1.0);
    pub const L2: NormKind = NormKind::Lp(2.0);
    pub const LINF: NormKind = NormKind::Lp(f64::INFINITY);

    pub fn validate(self) -> Result<()> {
        match self {
            NormKind::Lp(p) | NormKind::Schatten(p) if p.is_nan() || p < 1.0 => Err(
                Error::InvalidArgument(format!("norm exponent {p} is below 1")),
            ),
            _ => Ok(()),
        }
    }
}

fn exponent(p: f64) -> String {
    if p.is_infinite() {
        "inf".into()
    } else {
        format!("{p}")
    }
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormKind::Lp(p) => write!(f, "L{}", exponent(*p)),
            NormKind::Operator => f.write_str("Op"),
            NormKind::Schatten(p) => write!(f, "S{}", exponent(*p)),
        }
    }
}

impl FromStr for NormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let exp = |t: &str| -> Result<f64> {
            match t {
                "inf" | "∞" => Ok(f64::INFINITY),
                _ => t
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad norm exponent `{t}`"))),
            }
        };
        let kind = match s {
            "Op" | "op" | "Operator" | "C*" => NormKind::Operator,
            _ if s.starts_with('L') => NormKind::Lp(exp(&s[1..])?),
            _ if s.starts_with('S') => NormKind::Schatten(exp(&s[1..])?),
            _ => return Err(Error::InvalidArgument(format!("unknown norm `{s}`"))),
        };
        kind.validate()?;
        Ok(kind)
    }
}

pub(crate) fn weighted_lp(coeffs: &[C64], weight: f64, p: f64) -> f64 {
    if p.is_infinite() {
        return coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    }
    if p == 1.0 {
        return weight * coeffs.iter().map(|c| c.norm()).sum::<f64>();
    }
    if p == 2.0 {
        return (weight * coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>()).sqrt();
    }
    // scale by the max modulus to stay clear of overflow for large p
    let m = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if m == 0.0 {
        return 0.0;
    }
    let s: f64 = coeffs.iter().map(|c| (c.norm() / m).powf(p)).sum();
    m * (weight * s).powf(1.0 / p)
}

pub(crate) fn singular_values(m: &DMatrix<C64>) -> Vec<f64> {
    m.clone().singular_values().iter().copied().collect()
}

pub(crate) fn spectral_norm(m: &DMatrix<C64>) -> f64 {
    singular_values(m).into_iter().fold(0.0, f64::max)
}

pub(crate) fn schatten(m: &DMatrix<C64>, p: f64) -> f64 {
    let s = singular_values(m);
    if p.is_infinite() {
        return s.into_iter().fold(0.0, f64::max);
    }
    let top = s.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return 0.0;
    }
    top * s
        .iter()
        .map(|x| (x / top).powf(p))
        .sum::<f64>()
        .powf(1.0 / p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_element, Distribution, StarAlgebra};
    use crate::group::FiniteGroup;

    #[test]
    fn parse_and_display_round_trip() {
        for k in [
            NormKind::L1,
            NormKind::L2,
            NormKind::LINF,
            NormKind::Operator,
            NormKind::Schatten(4.0),
        ] {
            assert_eq!(k.to_string().parse::<NormKind>().unwrap(), k);
        }
        assert!("L0.5".parse::<NormKind>().is_err());
        assert!("X2".parse::<NormKind>().is_err());
    }

    #[test]
    fn lp_norms_nest_under_probability_weight() {
        let alg = StarAlgebra::group_algebra(&FiniteGroup::cyclic(12).unwrap());
        let ps = [1.0, 1.5, 2.0, 3.0, 4.0, f64::INFINITY];
        for seed in 0..1000 {
            let f = random_element(&alg, seed, Distribution::HeavyTailed).unwrap();
            let norms: Vec<f64> = ps
                .iter()
                .map(|&p| alg.norm(&f, NormKind::Lp(p)).unwrap())
                .collect();
            for w in norms.windows(2) {
                assert!(w[0] <= w[1] * (1.0 + 1e-12), "{norms:?}");
            }
        }
    }

    #[test]
    fn norm_axioms_and_isometric_involution() {
        let algs = [
            StarAlgebra::group_algebra(&FiniteGroup::symmetric(3).unwrap()),
            StarAlgebra::group_algebra(&FiniteGroup::quaternion()),
            StarAlgebra::matrix_algebra(4).unwrap(),
        ];
        let kinds = [
            NormKind::L1,
            NormKind::L2,
            NormKind::LINF,
            NormKind::Lp(3.0),
            NormKind::Operator,
            NormKind::Schatten(1.0),
            NormKind::Schatten(2.0),
            NormKind::Schatten(4.0),
        ];
        for alg in &algs {
            for seed in 0..50 {
                let a = random_element(alg, 2 * seed, Distribution::Gaussian).unwrap();
                let b = random_element(alg, 2 * seed + 1, Distribution::Gaussian).unwrap();
                let sum = alg.add(&a, &b).unwrap();
                let z = C64::new(-1.5, 0.75);
                for &k in &kinds {
                    let (na, nb) = (alg.norm(&a, k).unwrap(), alg.norm(&b, k).unwrap());
                    let tol = 1e-12 * (na + nb);
                    assert!(alg.norm(&sum, k).unwrap() <= na + nb + tol);
                    let scaled = alg.norm(&alg.scale(&a, z), k).unwrap();
                    assert!((scaled - z.norm() * na).abs() <= 1e-12 * scaled);
                    let star = alg.norm(&alg.adjoint(&a).unwrap(), k).unwrap();
                    assert!(
                        (star - na).abs() <= 1e-12 * na,
                        "{k} on {}",
                        crate::algebra::NormedStarAlgebra::label(alg)
                    );
                }
            }
            for &k in &kinds {
                assert_eq!(alg.norm(&alg.zero(), k).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn l1_and_operator_are_submultiplicative() {
        let alg = StarAlgebra::group_algebra(&FiniteGroup::dihedral(4).unwrap());
        for seed in 0..200 {
            let a = random_element(&alg, seed, Distribution::Gaussian).unwrap();
            let b = random_element(&alg, seed + 10_000, Distribution::Gaussian).unwrap();
            let ab = alg.multiply(&a, &b).unwrap();
            for k in [NormKind::L1, NormKind::Operator] {
                let bound = alg.norm(&a, k).unwrap() * alg.norm(&b, k).unwrap();
                assert!(alg.norm(&ab, k).unwrap() <= bound * (1.0 + 1e-12));
            }
        }
    }
}
