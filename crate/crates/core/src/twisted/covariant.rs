use nalgebra::DMatrix;

use super::{TwistedElement, TwistedSystem};
use crate::algebra::{AlgebraElement, C64};
use crate::error::{Error, Result};

/// A function `H → matrices`, indexed by group element.
pub type MatrixFunction = Vec<DMatrix<C64>>;

/// The pair `(U, λ)` for an untwisted system on a group algebra: `U_x` implements `α_x`
/// on the weighted ℓ²(K) space and `λ` is the left-regular representation.
#[derive(Clone, Debug)]
pub struct CovariantRep {
    system: TwistedSystem,
    u: Vec<DMatrix<C64>>,
}

fn max_entry(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

impl CovariantRep {
    /// Fails with `NotSplit` when some `ω(x,y)` is not the unit.
    pub fn new(system: &TwistedSystem) -> Result<Self> {
        if system.algebra().group().is_none() {
            return Err(Error::InvalidArgument(
                "covariant pair needs a group algebra".into(),
            ));
        }
        let h = system.group();
        let unit = system.algebra().unit();
        for x in 0..h.order() {
            for y in 0..h.order() {
                if *system.omega(x, y) != unit {
                    return Err(Error::NotSplit { x, y });
                }
            }
        }
        let d = system.algebra().dim();
        let u = (0..h.order())
            .map(|x| {
                // (U_x g)(t) = g(perm_x(t))
                let perm = system.alpha_permutation(x);
                DMatrix::from_fn(d, d, |t, s| {
                    if perm[t] == s {
                        C64::new(1.0, 0.0)
                    } else {
                        C64::new(0.0, 0.0)
                    }
                })
            })
            .collect();
        Ok(Self {
            system: system.clone(),
            u,
        })
    }

    pub fn system(&self) -> &TwistedSystem {
        &self.system
    }

    pub fn u(&self, x: usize) -> &DMatrix<C64> {
        &self.u[x]
    }

    pub fn lambda(&self, f: &AlgebraElement) -> Result<DMatrix<C64>> {
        self.system.algebra().left_regular(f)
    }

    /// `max ‖U_x·U_x† − I‖` entrywise, together with `max ‖U_x U_y − U_{xy}‖`.
    pub fn unitarity_residual(&self) -> f64 {
        let h = self.system.group();
        let d = self.system.algebra().dim();
        let id = DMatrix::<C64>::identity(d, d);
        let mut worst = 0.0f64;
        for x in 0..h.order() {
            worst = worst.max(max_entry(&(&self.u[x] * self.u[x].adjoint() - &id)));
            for y in 0..h.order() {
                worst = worst.max(max_entry(&(&self.u[x] * &self.u[y] - &self.u[h.mul(x, y)])));
            }
        }
        worst
    }

    /// `max |U_x λ(f) U_x† − λ(α_x f)|` over all x and basis elements f.
    pub fn covariance_residual(&self) -> f64 {
        let alg = self.system.algebra();
        let mut worst = 0.0f64;
        for x in 0..self.system.group().order() {
            let ux = &self.u[x];
            for i in 0..alg.dim() {
                let f = alg.basis(i);
                let lhs = ux * self.lambda(&f).expect("own algebra") * ux.adjoint();
                let rhs = self.lambda(&self.system.alpha(x, &f)).expect("own algebra");
                worst = worst.max(max_entry(&(lhs - rhs)));
            }
        }
        worst
    }

    /// `φ(Φ)(x) = λ(Φ(x))·U_x`.
    pub fn embed(&self, phi: &TwistedElement) -> Result<MatrixFunction> {
        if phi.system_id() != self.system.id() {
            return Err(Error::Mismatch);
        }
        (0..self.system.group().order())
            .map(|x| Ok(self.lambda(&self.system.value(phi, x))? * &self.u[x]))
            .collect()
    }

    /// `(A*B)(x) = Σ_y A(y)·B(y⁻¹x)`.
    pub fn convolve(&self, a: &MatrixFunction, b: &MatrixFunction) -> MatrixFunction {
        let h = self.system.group();
        let d = self.system.algebra().dim();
        let mut out = vec![DMatrix::zeros(d, d); h.order()];
        for y in 0..h.order() {
            for z in 0..h.order() {
                out[h.mul(y, z)] += &a[y] * &b[z];
            }
        }
        out
    }

    /// Largest entrywise difference between two matrix functions.
    pub fn max_diff(&self, a: &MatrixFunction, b: &MatrixFunction) -> f64 {
        a.iter()
            .zip(b)
            .map(|(p, q)| max_entry(&(p - q)))
            .fold(0.0, f64::max)
    }

    /// `A*(x) = A(x⁻¹)†`.
    pub fn adjoint(&self, a: &MatrixFunction) -> MatrixFunction {
        let h = self.system.group();
        (0..h.order()).map(|x| a[h.inv(x)].adjoint()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_element, Distribution, NormKind};
    use crate::group::ExtensionSpec;

    fn split_system(spec: &str) -> TwistedSystem {
        let ext = spec.parse::<ExtensionSpec>().unwrap().build().unwrap();
        TwistedSystem::from_extension(&ext.split().unwrap()).unwrap()
    }

    #[test]
    fn u_identity_and_covariance_on_d4() {
        let rep = CovariantRep::new(&split_system("sd(C4, C2, inv) / base")).unwrap();
        assert_eq!(*rep.u(0), DMatrix::identity(4, 4));
        assert!(rep.unitarity_residual() < 1e-15);
        assert!(rep.covariance_residual() < 1e-12);
    }

    #[test]
    fn embedding_is_a_star_homomorphism() {
        for spec in ["D4 / <r>", "C6 / <g^2>", "wr(C2, 3, cyc) / base"] {
            let sys = split_system(spec);
            let rep = CovariantRep::new(&sys).unwrap();
            for seed in 0..20 {
                let a = random_element(&sys, seed, Distribution::Gaussian).unwrap();
                let b = random_element(&sys, seed + 77, Distribution::Gaussian).unwrap();
                let (ea, eb) = (rep.embed(&a).unwrap(), rep.embed(&b).unwrap());
                let prod = rep.embed(&sys.convolve(&a, &b).unwrap()).unwrap();
                assert!(
                    rep.max_diff(&prod, &rep.convolve(&ea, &eb)) < 1e-12,
                    "{spec}"
                );
                let star = rep.embed(&sys.adjoint(&a).unwrap()).unwrap();
                assert!(rep.max_diff(&star, &rep.adjoint(&ea)) < 1e-12, "{spec}");
                for (x, m) in ea.iter().enumerate() {
                    let want = sys
                        .algebra()
                        .norm(&sys.value(&a, x), NormKind::Operator)
                        .unwrap();
                    let s = m.clone().singular_values().max();
                    assert!((s - want).abs() < 1e-12 * want.max(1.0));
                }
            }
        }
    }

    #[test]
    fn twisted_systems_are_refused() {
        let ext = "Q8 / <i>"
            .parse::<ExtensionSpec>()
            .unwrap()
            .build()
            .unwrap();
        let sys = TwistedSystem::from_extension(&ext).unwrap();
        assert!(matches!(
            CovariantRep::new(&sys),
            Err(Error::NotSplit { .. })
        ));
    }
}
