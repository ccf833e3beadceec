//! Twisted actions `(α, ω)` of a finite group H on a coefficient *-algebra and the
//! twisted convolution algebra `ℓ¹_{α,ω}(H, A)`.
//!
//! An element Φ is a function `H → A`, stored flat: the coefficients of `Φ(x)` sit at
//! `x·dim(A) .. (x+1)·dim(A)`. H carries counting measure.

mod covariant;
mod decomposition;

pub use covariant::{CovariantRep, MatrixFunction};
pub use decomposition::{Certification, Convention, Decomposition};

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use nalgebra::DMatrix;

use crate::algebra::{
    random_element, AlgebraElement, Distribution, NormKind, NormedStarAlgebra, SpectrumResult,
    StarAlgebra, C64,
};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupExtension};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SystemId(u64);

/// A twisted action of `group` on `algebra`.
///
/// Each `α_x` acts by permuting basis coefficients: `α_x(f)[i] = f[perm_x[i]]`. That
/// covers conjugation actions on group algebras and the identity on any algebra.
#[derive(Clone, Debug)]
pub struct TwistedSystem {
    id: SystemId,
    label: String,
    group: FiniteGroup,
    algebra: StarAlgebra,
    alpha: Vec<Vec<usize>>,
    omega: Vec<AlgebraElement>,
    modular: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwistedElement {
    system: SystemId,
    coeffs: Vec<C64>,
}

impl TwistedElement {
    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn system_id(&self) -> SystemId {
        self.system
    }
}

/// Largest residual per law from [`TwistedSystem::check_axioms`], with the first few
/// failing witnesses.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AxiomCheck {
    /// `α_x(ω(y,z))·ω(x,yz) = ω(x,y)·ω(xy,z)`
    pub cocycle: f64,
    /// `α_x(α_y(a))·ω(x,y) = ω(x,y)·α_{xy}(a)`
    pub twisted_homomorphism: f64,
    /// `ω(x,e) = ω(e,y) = 1`, `α_e = id`
    pub normalization: f64,
    /// `ω*·ω = ω·ω* = 1`
    pub unitarity: f64,
    /// each `α_x` multiplicative and *-preserving
    pub automorphism: f64,
    /// relative change of L1, L2 and Operator norms under each `α_x`
    pub isometry: f64,
    /// `(description, residual)` of the first failures found.
    pub witnesses: Vec<(String, f64)>,
}

impl AxiomCheck {
    pub fn worst(&self) -> f64 {
        [
            self.cocycle,
            self.twisted_homomorphism,
            self.normalization,
            self.unitarity,
            self.automorphism,
            self.isometry,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

const MAX_WITNESSES: usize = 8;

fn note(
    witnesses: &mut Vec<(String, f64)>,
    residual: f64,
    tol: f64,
    what: impl FnOnce() -> String,
) {
    if residual > tol && witnesses.len() < MAX_WITNESSES {
        witnesses.push((what(), residual));
    }
}

impl TwistedSystem {
    /// `α_x(f)(t) = f(η(x)⁻¹·t·η(x))` and `ω(x,y) = |K|·δ_{τ(x,y)}` on the group algebra
    /// of the kernel, Haar weight `1/|K|`.
    pub fn from_extension(ext: &GroupExtension) -> Result<Self> {
        let bad = ext.invariant_violations();
        if !bad.is_empty() {
            return Err(Error::InvalidSection(bad.join("; ")));
        }
        let g = ext.total();
        let h = ext.quotient().clone();
        let k = ext.kernel_group();
        let algebra = StarAlgebra::group_algebra(k);
        let alpha = (0..h.order())
            .map(|x| {
                let eta = ext.section()[x];
                let eta_inv = g.inv(eta);
                (0..k.order())
                    .map(|t| {
                        let conj = g.mul(g.mul(eta_inv, ext.kernel()[t]), eta);
                        ext.kernel_local(conj).expect("kernel is normal")
                    })
                    .collect()
            })
            .collect();
        let omega = (0..h.order())
            .flat_map(|x| (0..h.order()).map(move |y| (x, y)))
            .map(|(x, y)| algebra.group_like(ext.tau_local(x, y)))
            .collect();
        Self::from_parts(ext.label().to_string(), h, algebra, alpha, omega)
    }

    /// `α ≡ id`, `ω ≡ 1`: the plain `A`-valued convolution algebra over H.
    pub fn trivial(group: FiniteGroup, algebra: StarAlgebra) -> Self {
        let n = group.order();
        let d = algebra.dim();
        let label = format!("{} x| {}", algebra_label(&algebra), group.name());
        let alpha = vec![(0..d).collect(); n];
        let omega = vec![algebra.unit(); n * n];
        Self::from_parts(label, group, algebra, alpha, omega).expect("consistent sizes")
    }

    /// Assembles a system from raw data without checking the twisted-action laws;
    /// see [`check_axioms`](Self::check_axioms).
    pub fn from_parts(
        label: String,
        group: FiniteGroup,
        algebra: StarAlgebra,
        alpha: Vec<Vec<usize>>,
        omega: Vec<AlgebraElement>,
    ) -> Result<Self> {
        let (n, d) = (group.order(), algebra.dim());
        if alpha.len() != n || alpha.iter().any(|p| !is_permutation(p, d)) {
            return Err(Error::InvalidArgument(
                "each α_x must permute the algebra basis".into(),
            ));
        }
        if omega.len() != n * n || omega.iter().any(|w| w.algebra_id() != algebra.id()) {
            return Err(Error::InvalidArgument(
                "ω needs one algebra element per pair".into(),
            ));
        }
        let mut sys = Self {
            id: SystemId(0),
            label,
            group,
            algebra,
            alpha,
            omega,
            modular: vec![1.0; n],
        };
        sys.rehash();
        Ok(sys)
    }

    fn rehash(&mut self) {
        let mut h = DefaultHasher::new();
        self.group.table().hash(&mut h);
        self.algebra.id().hash(&mut h);
        self.alpha.hash(&mut h);
        for w in &self.omega {
            for c in w.coeffs() {
                c.re.to_bits().hash(&mut h);
                c.im.to_bits().hash(&mut h);
            }
        }
        self.id = SystemId(h.finish());
    }

    /// Copy of the system with `ω(x,y)` replaced. Used to build broken fixtures.
    pub fn with_omega(&self, x: usize, y: usize, value: AlgebraElement) -> Result<Self> {
        if value.algebra_id() != self.algebra.id() {
            return Err(Error::Mismatch);
        }
        let mut sys = self.clone();
        sys.omega[x * self.group.order() + y] = value;
        sys.label = format!("{} [omega({x},{y}) replaced]", self.label);
        sys.rehash();
        Ok(sys)
    }

    pub fn id(&self) -> SystemId {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.label
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn algebra(&self) -> &StarAlgebra {
        &self.algebra
    }

    pub fn omega(&self, x: usize, y: usize) -> &AlgebraElement {
        &self.omega[x * self.group.order() + y]
    }

    /// Basis permutation implementing `α_x`.
    pub fn alpha_permutation(&self, x: usize) -> &[usize] {
        &self.alpha[x]
    }

    pub fn modular(&self, x: usize) -> f64 {
        self.modular[x]
    }

    pub fn alpha(&self, x: usize, f: &AlgebraElement) -> AlgebraElement {
        let perm = &self.alpha[x];
        let coeffs = perm.iter().map(|&i| f.coeffs()[i]).collect();
        self.algebra.element(coeffs).expect("same algebra")
    }

    /// `ω ≡ 1`.
    pub fn is_untwisted(&self) -> bool {
        let unit = self.algebra.unit();
        self.omega.iter().all(|w| *w == unit)
    }

    fn check(&self, phi: &TwistedElement) -> Result<()> {
        if phi.system != self.id {
            return Err(Error::Mismatch);
        }
        Ok(())
    }

    fn width(&self) -> usize {
        self.algebra.dim()
    }

    /// `Φ(x)` as an algebra element.
    pub fn value(&self, phi: &TwistedElement, x: usize) -> AlgebraElement {
        let d = self.width();
        self.algebra
            .element(phi.coeffs[x * d..(x + 1) * d].to_vec())
            .expect("same algebra")
    }

    pub fn element(&self, values: &[AlgebraElement]) -> Result<TwistedElement> {
        if values.len() != self.group.order() {
            return Err(Error::InvalidArgument(format!(
                "{} values for a group of order {}",
                values.len(),
                self.group.order()
            )));
        }
        let mut coeffs = Vec::with_capacity(self.dimension());
        for v in values {
            if v.algebra_id() != self.algebra.id() {
                return Err(Error::Mismatch);
            }
            coeffs.extend_from_slice(v.coeffs());
        }
        Ok(TwistedElement {
            system: self.id,
            coeffs,
        })
    }

    /// The function with value `a` at `x` and zero elsewhere.
    pub fn delta(&self, x: usize, a: &AlgebraElement) -> TwistedElement {
        let d = self.width();
        let mut coeffs = vec![C64::new(0.0, 0.0); self.dimension()];
        coeffs[x * d..(x + 1) * d].copy_from_slice(a.coeffs());
        TwistedElement {
            system: self.id,
            coeffs,
        }
    }

    pub fn zero(&self) -> TwistedElement {
        TwistedElement {
            system: self.id,
            coeffs: vec![C64::new(0.0, 0.0); self.dimension()],
        }
    }

    /// `(Φ*Ψ)(x) = Σ_y Φ(y)·α_y[Ψ(y⁻¹x)]·ω(y, y⁻¹x)`.
    pub fn convolve(&self, phi: &TwistedElement, psi: &TwistedElement) -> Result<TwistedElement> {
        self.check(phi)?;
        self.check(psi)?;
        let (h, alg, d) = (&self.group, &self.algebra, self.width());
        let mut out = vec![C64::new(0.0, 0.0); self.dimension()];
        for y in 0..h.order() {
            let fy = self.value(phi, y);
            if fy.is_zero() {
                continue;
            }
            for z in 0..h.order() {
                let gz = self.value(psi, z);
                if gz.is_zero() {
                    continue;
                }
                // z = y⁻¹x, so x = y·z
                let x = h.mul(y, z);
                let term =
                    alg.multiply(&alg.multiply(&fy, &self.alpha(y, &gz))?, self.omega(y, z))?;
                for (o, t) in out[x * d..(x + 1) * d].iter_mut().zip(term.coeffs()) {
                    *o += t;
                }
            }
        }
        Ok(TwistedElement {
            system: self.id,
            coeffs: out,
        })
    }

    /// `Φ*(x) = Δ(x⁻¹)·ω(x,x⁻¹)*·α_x[Φ(x⁻¹)*]`.
    pub fn adjoint(&self, phi: &TwistedElement) -> Result<TwistedElement> {
        self.check(phi)?;
        let (h, alg) = (&self.group, &self.algebra);
        let values = (0..h.order())
            .map(|x| {
                let xi = h.inv(x);
                let inner = self.alpha(x, &alg.adjoint(&self.value(phi, xi))?);
                let v = alg.multiply(&alg.adjoint(self.omega(x, xi))?, &inner)?;
                Ok(alg.scale(&v, C64::new(self.modular[xi], 0.0)))
            })
            .collect::<Result<Vec<_>>>()?;
        self.element(&values)
    }

    /// `δ_e ⊗ 1`.
    pub fn unit(&self) -> TwistedElement {
        self.delta(self.group.identity(), &self.algebra.unit())
    }

    /// `Σ_x ‖Φ(x)‖` with the coefficient norm `coeff`.
    pub fn l1_norm(&self, phi: &TwistedElement, coeff: NormKind) -> Result<f64> {
        self.check(phi)?;
        let mut total = 0.0;
        for x in 0..self.group.order() {
            total += self.algebra.norm(&self.value(phi, x), coeff)?;
        }
        Ok(total)
    }

    /// Matrix of left twisted multiplication by Φ on the flat coefficient space.
    pub fn left_regular(&self, phi: &TwistedElement) -> Result<DMatrix<C64>> {
        self.check(phi)?;
        let n = self.dimension();
        let mut m = DMatrix::zeros(n, n);
        let mut e = self.zero();
        for j in 0..n {
            e.coeffs[j] = C64::new(1.0, 0.0);
            let col = self.convolve(phi, &e)?;
            e.coeffs[j] = C64::new(0.0, 0.0);
            for (i, v) in col.coeffs.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        Ok(m)
    }

    /// Eigenvalues of left twisted multiplication by Φ.
    pub fn twisted_spectrum(&self, phi: &TwistedElement) -> Result<SpectrumResult> {
        crate::algebra::eigenvalues(&self.left_regular(phi)?)
    }

    /// Exhaustive check of the twisted-action laws. Residuals are absolute coefficient
    /// differences except `isometry`, which is relative.
    pub fn check_axioms(&self, tol: f64) -> AxiomCheck {
        let (h, alg) = (&self.group, &self.algebra);
        let n = h.order();
        let e = h.identity();
        let unit = alg.unit();
        let diff = |a: &AlgebraElement, b: &AlgebraElement| alg.max_abs_diff(a, b);
        let mul =
            |a: &AlgebraElement, b: &AlgebraElement| alg.multiply(a, b).expect("same algebra");
        let mut c = AxiomCheck::default();

        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = mul(&self.alpha(x, self.omega(y, z)), self.omega(x, h.mul(y, z)));
                    let rhs = mul(self.omega(x, y), self.omega(h.mul(x, y), z));
                    let r = diff(&lhs, &rhs);
                    c.cocycle = c.cocycle.max(r);
                    note(&mut c.witnesses, r, tol, || {
                        format!(
                            "cocycle law fails at ({}, {}, {})",
                            h.label(x),
                            h.label(y),
                            h.label(z)
                        )
                    });
                }
            }
        }

        let basis: Vec<AlgebraElement> = (0..alg.dim()).map(|i| alg.basis(i)).collect();
        for x in 0..n {
            for y in 0..n {
                let w = self.omega(x, y);
                let xy = h.mul(x, y);
                for (i, a) in basis.iter().enumerate() {
                    let lhs = mul(&self.alpha(x, &self.alpha(y, a)), w);
                    let rhs = mul(w, &self.alpha(xy, a));
                    let r = diff(&lhs, &rhs);
                    c.twisted_homomorphism = c.twisted_homomorphism.max(r);
                    note(&mut c.witnesses, r, tol, || {
                        format!(
                            "twisted homomorphism law fails at ({}, {}) on basis element {i}",
                            h.label(x),
                            h.label(y)
                        )
                    });
                }
            }
        }

        for x in 0..n {
            for (r, what) in [
                (diff(self.omega(x, e), &unit), "omega(x,e) is not the unit"),
                (diff(self.omega(e, x), &unit), "omega(e,x) is not the unit"),
            ] {
                c.normalization = c.normalization.max(r);
                note(&mut c.witnesses, r, tol, || {
                    format!("{what} at x = {}", h.label(x))
                });
            }
        }
        let id_moves = self.alpha[e].iter().enumerate().any(|(i, &j)| i != j);
        if id_moves {
            c.normalization = c.normalization.max(1.0);
            c.witnesses
                .push(("alpha_e is not the identity".into(), 1.0));
        }

        for x in 0..n {
            for y in 0..n {
                let w = self.omega(x, y);
                let ws = alg.adjoint(w).expect("same algebra");
                let r = diff(&mul(&ws, w), &unit).max(diff(&mul(w, &ws), &unit));
                c.unitarity = c.unitarity.max(r);
                note(&mut c.witnesses, r, tol, || {
                    format!("omega({}, {}) is not unitary", h.label(x), h.label(y))
                });
            }
        }

        for x in 0..n {
            for (i, a) in basis.iter().enumerate() {
                let star = diff(
                    &self.alpha(x, &alg.adjoint(a).expect("same algebra")),
                    &alg.adjoint(&self.alpha(x, a)).expect("same algebra"),
                );
                let mut r = star;
                for (j, b) in basis.iter().enumerate() {
                    let m = diff(
                        &self.alpha(x, &mul(a, b)),
                        &mul(&self.alpha(x, a), &self.alpha(x, b)),
                    );
                    r = r.max(m);
                    note(&mut c.witnesses, m, tol, || {
                        format!(
                            "alpha_{} is not multiplicative on basis pair ({i}, {j})",
                            h.label(x)
                        )
                    });
                }
                c.automorphism = c.automorphism.max(r);
            }
            for seed in 0..4 {
                let a = random_element(alg, seed, Distribution::Gaussian).expect("valid algebra");
                let b = self.alpha(x, &a);
                for kind in [NormKind::L1, NormKind::L2, NormKind::Operator] {
                    let na = alg.norm(&a, kind).expect("valid norm");
                    let nb = alg.norm(&b, kind).expect("valid norm");
                    let r = (na - nb).abs() / na.max(f64::MIN_POSITIVE);
                    c.isometry = c.isometry.max(r);
                    note(&mut c.witnesses, r, tol, || {
                        format!("alpha_{} changes the {kind} norm", h.label(x))
                    });
                }
            }
        }
        c
    }

    /// Rows of `(H-element label, coefficients of Φ(x))`.
    pub fn rows(&self, phi: &TwistedElement) -> Vec<(String, Vec<C64>)> {
        (0..self.group.order())
            .map(|x| {
                (
                    self.group.label(x).to_string(),
                    self.value(phi, x).coeffs().to_vec(),
                )
            })
            .collect()
    }
}

fn algebra_label(a: &StarAlgebra) -> String {
    NormedStarAlgebra::label(a)
}

fn is_permutation(p: &[usize], d: usize) -> bool {
    let mut seen = vec![false; d];
    p.len() == d
        && p.iter()
            .all(|&i| i < d && !std::mem::replace(&mut seen[i], true))
}

impl NormedStarAlgebra for TwistedSystem {
    type Element = TwistedElement;

    fn label(&self) -> String {
        self.label.clone()
    }

    fn dimension(&self) -> usize {
        self.group.order() * self.algebra.dim()
    }

    fn unit(&self) -> TwistedElement {
        TwistedSystem::unit(self)
    }

    fn from_coefficients(&self, coeffs: Vec<C64>) -> Result<TwistedElement> {
        if coeffs.len() != self.dimension() {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients for a system of dimension {}",
                coeffs.len(),
                self.dimension()
            )));
        }
        Ok(TwistedElement {
            system: self.id,
            coeffs,
        })
    }

    fn coefficients(&self, a: &TwistedElement) -> Vec<C64> {
        a.coeffs.clone()
    }

    fn multiply(&self, a: &TwistedElement, b: &TwistedElement) -> Result<TwistedElement> {
        self.convolve(a, b)
    }

    fn adjoint(&self, a: &TwistedElement) -> Result<TwistedElement> {
        TwistedSystem::adjoint(self, a)
    }

    /// The ℓ¹ norm over H with `kind` on the coefficients.
    fn norm(&self, a: &TwistedElement, kind: NormKind) -> Result<f64> {
        kind.validate()?;
        self.l1_norm(a, kind)
    }

    fn spectrum(&self, a: &TwistedElement) -> Result<SpectrumResult> {
        self.twisted_spectrum(a)
    }

    fn scale(&self, a: &TwistedElement, c: C64) -> TwistedElement {
        TwistedElement {
            system: a.system,
            coeffs: a.coeffs.iter().map(|v| c * v).collect(),
        }
    }
}
