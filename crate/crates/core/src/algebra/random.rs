use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Normal, StandardNormal};

use std::fmt;
use std::str::FromStr;

use super::{NormedStarAlgebra, C64};
use crate::error::{Error, Result};

/// Shape of the random elements fed to the verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Distribution {
    /// Independent complex Gaussian coefficients, `E|c|² = 1`.
    Gaussian,
    /// `(b + b*)/2` for Gaussian `b`.
    SelfAdjoint,
    /// `b*·b` for Gaussian `b`.
    Positive,
    /// Gaussian directions with log-normal magnitudes: a few coefficients dominate,
    /// which pushes elements towards the sparse, badly conditioned corner.
    HeavyTailed,
}

impl Distribution {
    pub const ALL: [Distribution; 4] = [
        Distribution::Gaussian,
        Distribution::SelfAdjoint,
        Distribution::Positive,
        Distribution::HeavyTailed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Distribution::Gaussian => "gaussian",
            Distribution::SelfAdjoint => "self-adjoint",
            Distribution::Positive => "positive",
            Distribution::HeavyTailed => "heavy-tailed",
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Distribution::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown distribution `{s}`")))
    }
}

pub fn random_coefficients(rng: &mut impl Rng, len: usize, heavy: bool) -> Vec<C64> {
    let spread = Normal::new(0.0, 2.0).expect("valid parameters");
    (0..len)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            let z = C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2;
            if heavy {
                z * f64::exp(spread.sample(rng))
            } else {
                z
            }
        })
        .collect()
}

/// A reproducible random element: the same `(algebra, seed, distribution)` always
/// yields the same coefficients.
pub fn random_element<A: NormedStarAlgebra>(
    alg: &A,
    seed: u64,
    dist: Distribution,
) -> Result<A::Element> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = alg.dimension();
    let b = alg.from_coefficients(random_coefficients(
        &mut rng,
        d,
        dist == Distribution::HeavyTailed,
    ))?;
    match dist {
        Distribution::Gaussian | Distribution::HeavyTailed => Ok(b),
        Distribution::SelfAdjoint => {
            let half = C64::new(0.5, 0.0);
            alg.linear_combination(&b, half, &alg.adjoint(&b)?, half)
        }
        Distribution::Positive => alg.multiply(&alg.adjoint(&b)?, &b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::StarAlgebra;
    use crate::group::FiniteGroup;

    #[test]
    fn reproducible_and_seed_sensitive() {
        let alg = StarAlgebra::group_algebra(&FiniteGroup::dihedral(3).unwrap());
        let a = random_element(&alg, 7, Distribution::Gaussian).unwrap();
        assert_eq!(a, random_element(&alg, 7, Distribution::Gaussian).unwrap());
        assert_ne!(a, random_element(&alg, 8, Distribution::Gaussian).unwrap());
    }

    #[test]
    fn self_adjoint_and_positive_shapes() {
        let alg = StarAlgebra::group_algebra(&FiniteGroup::quaternion());
        for seed in 0..20 {
            let h = random_element(&alg, seed, Distribution::SelfAdjoint).unwrap();
            assert!(alg.max_abs_diff(&h, &alg.adjoint(&h).unwrap()) < 1e-15);
            let p = random_element(&alg, seed, Distribution::Positive).unwrap();
            let s = alg.spectrum(&p).unwrap();
            assert!(s
                .eigenvalues
                .iter()
                .all(|l| l.re > -1e-12 && l.im.abs() < 1e-12));
        }
    }
}
