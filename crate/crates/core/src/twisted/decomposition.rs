use std::fmt;

use super::{TwistedElement, TwistedSystem};
use crate::algebra::{AlgebraElement, NormKind, NormedStarAlgebra, StarAlgebra, C64};
use crate::error::{Error, Result};
use crate::group::GroupExtension;

/// How an element of G is split into a kernel part and a section part.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// `Φ(x)(k) = F(k·η(x))`
    KernelFirst,
    /// `Φ(x)(k) = F(η(x)·k)`
    SectionFirst,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::KernelFirst => "F(k*eta(x))",
            Convention::SectionFirst => "F(eta(x)*k)",
        })
    }
}

/// Outcome of checking a decomposition on every pair of basis elements.
#[derive(Clone, Debug, PartialEq)]
pub struct Certification {
    pub convention: Convention,
    /// `max |to(F·G) − to(F)*to(G)|` over basis pairs.
    pub multiplicative: f64,
    /// `max |to(F*) − to(F)*|` over basis elements.
    pub involutive: f64,
    /// `max |‖to(F)‖ − ‖F‖_1|` over basis elements and the unit.
    pub isometric: f64,
    /// `to(unit) = δ_e ⊗ 1` and both round trips are exact on the basis.
    pub exact_round_trip: bool,
}

impl Certification {
    pub fn worst(&self) -> f64 {
        self.multiplicative.max(self.involutive).max(self.isometric)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.exact_round_trip && self.worst() <= tol
    }
}

/// The isomorphism between ℂ[G] (Haar weight `1/|K|`, total mass `|H|`) and the twisted
/// convolution algebra of the extension.
#[derive(Clone, Debug)]
pub struct Decomposition {
    convention: Convention,
    system: TwistedSystem,
    total: StarAlgebra,
    /// flat twisted index `x·|K| + k` → element of G
    position: Vec<usize>,
    /// element of G → flat twisted index
    inverse: Vec<usize>,
}

impl Decomposition {
    pub fn new(ext: &GroupExtension, convention: Convention) -> Result<Self> {
        let system = TwistedSystem::from_extension(ext)?;
        let g = ext.total();
        let (h, k) = (ext.quotient().order(), ext.kernel().len());
        let total = StarAlgebra::group_algebra_weighted(g, 1.0 / k as f64);
        let mut position = vec![0; h * k];
        let mut inverse = vec![usize::MAX; g.order()];
        for x in 0..h {
            let eta = ext.section()[x];
            for (kl, &kg) in ext.kernel().iter().enumerate() {
                let elem = match convention {
                    Convention::KernelFirst => g.mul(kg, eta),
                    Convention::SectionFirst => g.mul(eta, kg),
                };
                position[x * k + kl] = elem;
                inverse[elem] = x * k + kl;
            }
        }
        debug_assert!(inverse.iter().all(|&i| i != usize::MAX));
        Ok(Self {
            convention,
            system,
            total,
            position,
            inverse,
        })
    }

    /// Tries each convention in turn and keeps the first one that certifies.
    pub fn certified(ext: &GroupExtension, tol: f64) -> Result<(Self, Certification)> {
        let mut last = None;
        for convention in [Convention::KernelFirst, Convention::SectionFirst] {
            let d = Self::new(ext, convention)?;
            let cert = d.certify();
            if cert.passes(tol) {
                return Ok((d, cert));
            }
            last = Some(cert);
        }
        let cert = last.expect("two conventions tried");
        Err(Error::InvalidArgument(format!(
            "no decomposition convention certifies for {} (residual {:.3e})",
            ext.label(),
            cert.worst()
        )))
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn system(&self) -> &TwistedSystem {
        &self.system
    }

    /// ℂ[G] with the weight that makes the decomposition isometric.
    pub fn total_algebra(&self) -> &StarAlgebra {
        &self.total
    }

    pub fn to_twisted(&self, f: &AlgebraElement) -> Result<TwistedElement> {
        if f.algebra_id() != self.total.id() {
            return Err(Error::Mismatch);
        }
        let coeffs = self.position.iter().map(|&g| f.coeffs()[g]).collect();
        self.system.from_coefficients(coeffs)
    }

    pub fn from_twisted(&self, phi: &TwistedElement) -> Result<AlgebraElement> {
        if phi.system_id() != self.system.id() {
            return Err(Error::Mismatch);
        }
        let coeffs: Vec<C64> = self.inverse.iter().map(|&i| phi.coeffs()[i]).collect();
        self.total.element(coeffs)
    }

    /// Checks the *-isomorphism property on every basis pair of ℂ[G].
    pub fn certify(&self) -> Certification {
        let (sys, alg) = (&self.system, &self.total);
        let n = alg.dim();
        let basis: Vec<AlgebraElement> = (0..n).map(|i| alg.basis(i)).collect();
        let images: Vec<TwistedElement> = basis
            .iter()
            .map(|b| self.to_twisted(b).expect("own algebra"))
            .collect();

        let mut exact = self.to_twisted(&alg.unit()).expect("own algebra") == sys.unit();
        let mut multiplicative = 0.0f64;
        let mut involutive = 0.0f64;
        let mut isometric = 0.0f64;
        for i in 0..n {
            exact &= self.from_twisted(&images[i]).expect("own system") == basis[i];
            let phi = sys
                .from_coefficients(basis[i].coeffs().to_vec())
                .expect("same dimension");
            exact &= self
                .to_twisted(&self.from_twisted(&phi).expect("own system"))
                .expect("own algebra")
                == phi;

            let star = self
                .to_twisted(&alg.adjoint(&basis[i]).expect("own algebra"))
                .expect("own algebra");
            involutive = involutive
                .max(sys.max_abs_diff(&star, &sys.adjoint(&images[i]).expect("own system")));
            let n1 = alg.norm(&basis[i], NormKind::L1).expect("valid norm");
            let n2 = sys.l1_norm(&images[i], NormKind::L1).expect("valid norm");
            isometric = isometric.max((n1 - n2).abs());
            for j in 0..n {
                let prod = self
                    .to_twisted(&alg.multiply(&basis[i], &basis[j]).expect("own algebra"))
                    .expect("own algebra");
                let twisted = sys.convolve(&images[i], &images[j]).expect("own system");
                multiplicative = multiplicative.max(sys.max_abs_diff(&prod, &twisted));
            }
        }
        let unit_norm = sys.l1_norm(
            &self.to_twisted(&alg.unit()).expect("own algebra"),
            NormKind::L1,
        );
        isometric = isometric.max((unit_norm.expect("valid norm") - 1.0).abs());
        Certification {
            convention: self.convention,
            multiplicative,
            involutive,
            isometric,
            exact_round_trip: exact,
        }
    }
}
