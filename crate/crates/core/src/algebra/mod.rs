//! Finite-dimensional *-algebras: group algebras with a Haar weight and full
//! matrix algebras, with their norm families, spectra and the Gelfand iteration.

mod fourier;
mod norm;
mod random;
mod spectrum;

pub use fourier::{dual_group, DualGroup};
pub use norm::NormKind;
pub use random::{random_coefficients, random_element, Distribution};
pub use spectrum::{eigenvalues, gelfand_radius, match_spectra, GelfandTrace, SpectrumResult};

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

pub type C64 = Complex64;

/// Largest supported matrix algebra `M_n`.
pub const MAX_MATRIX_SIZE: usize = 32;

/// Operations shared by every normed *-algebra the verification suites run on.
pub trait NormedStarAlgebra: Sync {
    type Element: Clone + Send + Sync;

    fn label(&self) -> String;

    fn dimension(&self) -> usize;

    fn unit(&self) -> Self::Element;

    #[allow(clippy::wrong_self_convention)]
    fn from_coefficients(&self, coeffs: Vec<C64>) -> Result<Self::Element>;

    fn coefficients(&self, a: &Self::Element) -> Vec<C64>;

    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element>;

    fn adjoint(&self, a: &Self::Element) -> Result<Self::Element>;

    fn norm(&self, a: &Self::Element, kind: NormKind) -> Result<f64>;

    /// Eigenvalues of left multiplication by `a`.
    fn spectrum(&self, a: &Self::Element) -> Result<SpectrumResult>;

    fn linear_combination(
        &self,
        a: &Self::Element,
        x: C64,
        b: &Self::Element,
        y: C64,
    ) -> Result<Self::Element> {
        let (ca, cb) = (self.coefficients(a), self.coefficients(b));
        self.from_coefficients(ca.iter().zip(&cb).map(|(p, q)| x * p + y * q).collect())
    }

    fn scale(&self, a: &Self::Element, c: C64) -> Self::Element {
        self.from_coefficients(self.coefficients(a).iter().map(|v| c * v).collect())
            .expect("same dimension")
    }

    fn max_abs_diff(&self, a: &Self::Element, b: &Self::Element) -> f64 {
        self.coefficients(a)
            .iter()
            .zip(self.coefficients(b))
            .map(|(p, q)| (p - q).norm())
            .fold(0.0, f64::max)
    }

    fn max_abs(&self, a: &Self::Element) -> f64 {
        self.coefficients(a)
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraId(u64);

#[derive(Clone, Debug)]
enum Structure {
    Group(Arc<FiniteGroup>),
    Matrix(usize),
}

/// A finite-dimensional unital *-algebra.
#[derive(Clone, Debug)]
pub struct StarAlgebra {
    id: AlgebraId,
    label: String,
    structure: Structure,
    weight: f64,
}

/// An element of a [`StarAlgebra`], stored by its coefficients in the algebra's basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    algebra: AlgebraId,
    coeffs: Vec<C64>,
}

impl AlgebraElement {
    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn algebra_id(&self) -> AlgebraId {
        self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == C64::new(0.0, 0.0))
    }
}

impl StarAlgebra {
    /// ℂ[K] with convolution `(f*g)(t) = (1/|K|)·Σ_s f(s)·g(s⁻¹t)`.
    pub fn group_algebra(k: &FiniteGroup) -> Self {
        Self::group_algebra_weighted(k, 1.0 / k.order() as f64)
    }

    /// ℂ[G] with `(f*g)(t) = w·Σ_s f(s)·g(s⁻¹t)`; the unit is `(1/w)·δ_e`.
    pub fn group_algebra_weighted(g: &FiniteGroup, weight: f64) -> Self {
        assert!(weight > 0.0, "Haar weight must be positive");
        let mut h = DefaultHasher::new();
        "group".hash(&mut h);
        g.table().hash(&mut h);
        weight.to_bits().hash(&mut h);
        Self {
            id: AlgebraId(h.finish()),
            label: format!("C[{}]", g.name()),
            structure: Structure::Group(Arc::new(g.clone())),
            weight,
        }
    }

    /// `M_n(ℂ)` with the conjugate transpose; basis `E_ij` at index `i·n + j`.
    pub fn matrix_algebra(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_MATRIX_SIZE {
            return Err(Error::InvalidArgument(format!(
                "matrix algebra size {n} outside 1..={MAX_MATRIX_SIZE}"
            )));
        }
        let mut h = DefaultHasher::new();
        "matrix".hash(&mut h);
        n.hash(&mut h);
        Ok(Self {
            id: AlgebraId(h.finish()),
            label: format!("M{n}"),
            structure: Structure::Matrix(n),
            weight: 1.0,
        })
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    pub fn haar_weight(&self) -> f64 {
        self.weight
    }

    pub fn group(&self) -> Option<&FiniteGroup> {
        match &self.structure {
            Structure::Group(g) => Some(g),
            Structure::Matrix(_) => None,
        }
    }

    pub fn dim(&self) -> usize {
        match &self.structure {
            Structure::Group(g) => g.order(),
            Structure::Matrix(n) => n * n,
        }
    }

    pub fn element(&self, coeffs: Vec<C64>) -> Result<AlgebraElement> {
        if coeffs.len() != self.dim() {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients for an algebra of dimension {}",
                coeffs.len(),
                self.dim()
            )));
        }
        Ok(AlgebraElement {
            algebra: self.id,
            coeffs,
        })
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            algebra: self.id,
            coeffs: vec![C64::new(0.0, 0.0); self.dim()],
        }
    }

    /// The coefficient vector with a single 1 at `i`.
    pub fn basis(&self, i: usize) -> AlgebraElement {
        let mut e = self.zero();
        e.coeffs[i] = C64::new(1.0, 0.0);
        e
    }

    /// `|K|·δ_g` style group-like element: `(1/w)·δ_g`. Unitary.
    pub fn group_like(&self, g: usize) -> AlgebraElement {
        let mut e = self.zero();
        e.coeffs[g] = C64::new(1.0 / self.weight, 0.0);
        e
    }

    pub fn unit(&self) -> AlgebraElement {
        match &self.structure {
            Structure::Group(g) => self.group_like(g.identity()),
            Structure::Matrix(n) => {
                let mut e = self.zero();
                for i in 0..*n {
                    e.coeffs[i * n + i] = C64::new(1.0, 0.0);
                }
                e
            }
        }
    }

    fn check(&self, a: &AlgebraElement) -> Result<()> {
        if a.algebra != self.id || a.coeffs.len() != self.dim() {
            return Err(Error::Mismatch);
        }
        Ok(())
    }

    /// Structure constants: `basis(i)·basis(j)`.
    pub fn basis_product(&self, i: usize, j: usize) -> AlgebraElement {
        self.multiply(&self.basis(i), &self.basis(j))
            .expect("basis elements belong here")
    }

    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(a)?;
        self.check(b)?;
        let mut out = vec![C64::new(0.0, 0.0); self.dim()];
        match &self.structure {
            Structure::Group(g) => {
                let n = g.order();
                for s in 0..n {
                    let fs = a.coeffs[s];
                    if fs == C64::new(0.0, 0.0) {
                        continue;
                    }
                    let fs = fs * self.weight;
                    for u in 0..n {
                        out[g.mul(s, u)] += fs * b.coeffs[u];
                    }
                }
            }
            Structure::Matrix(n) => {
                let n = *n;
                for i in 0..n {
                    for k in 0..n {
                        let aik = a.coeffs[i * n + k];
                        if aik == C64::new(0.0, 0.0) {
                            continue;
                        }
                        for j in 0..n {
                            out[i * n + j] += aik * b.coeffs[k * n + j];
                        }
                    }
                }
            }
        }
        Ok(AlgebraElement {
            algebra: self.id,
            coeffs: out,
        })
    }

    pub fn adjoint(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(a)?;
        let coeffs = match &self.structure {
            Structure::Group(g) => (0..g.order()).map(|t| a.coeffs[g.inv(t)].conj()).collect(),
            Structure::Matrix(n) => {
                let n = *n;
                (0..n * n)
                    .map(|idx| a.coeffs[(idx % n) * n + idx / n].conj())
                    .collect()
            }
        };
        Ok(AlgebraElement {
            algebra: self.id,
            coeffs,
        })
    }

    pub fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(a)?;
        self.check(b)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Ok(AlgebraElement {
            algebra: self.id,
            coeffs,
        })
    }

    pub fn sub(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(a)?;
        self.check(b)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        Ok(AlgebraElement {
            algebra: self.id,
            coeffs,
        })
    }

    pub fn scale(&self, a: &AlgebraElement, c: C64) -> AlgebraElement {
        AlgebraElement {
            algebra: a.algebra,
            coeffs: a.coeffs.iter().map(|x| c * x).collect(),
        }
    }

    /// Weighted inner product `⟨a, b⟩ = w·Σ a(t)·conj(b(t))`.
    pub fn inner(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<C64> {
        self.check(a)?;
        self.check(b)?;
        let s: C64 = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x * y.conj())
            .sum();
        Ok(s * self.weight)
    }

    /// Matrix of left multiplication by `a` in the coefficient basis.
    pub fn left_regular(&self, a: &AlgebraElement) -> Result<DMatrix<C64>> {
        self.check(a)?;
        Ok(match &self.structure {
            Structure::Group(g) => {
                let n = g.order();
                // L[t][u] = w·a(t·u⁻¹)
                DMatrix::from_fn(n, n, |t, u| a.coeffs[g.mul(t, g.inv(u))] * self.weight)
            }
            Structure::Matrix(n) => {
                let n = *n;
                DMatrix::from_fn(n * n, n * n, |r, c| {
                    let (i, j) = (r / n, r % n);
                    let (k, l) = (c / n, c % n);
                    if j == l {
                        a.coeffs[i * n + k]
                    } else {
                        C64::new(0.0, 0.0)
                    }
                })
            }
        })
    }

    /// The operator whose singular values give the Operator and Schatten norms:
    /// the left-regular matrix for group algebras, the matrix itself for `M_n`.
    pub fn operator_matrix(&self, a: &AlgebraElement) -> Result<DMatrix<C64>> {
        match &self.structure {
            Structure::Group(_) => self.left_regular(a),
            Structure::Matrix(n) => {
                self.check(a)?;
                Ok(DMatrix::from_row_slice(*n, *n, &a.coeffs))
            }
        }
    }

    pub fn norm(&self, a: &AlgebraElement, kind: NormKind) -> Result<f64> {
        self.check(a)?;
        kind.validate()?;
        Ok(match kind {
            NormKind::Lp(p) => norm::weighted_lp(&a.coeffs, self.weight, p),
            NormKind::Operator => norm::spectral_norm(&self.operator_matrix(a)?),
            NormKind::Schatten(p) => norm::schatten(&self.operator_matrix(a)?, p),
        })
    }

    pub fn spectrum(&self, a: &AlgebraElement) -> Result<SpectrumResult> {
        match &self.structure {
            Structure::Group(_) => spectrum::spectrum_of(self.left_regular(a)?),
            Structure::Matrix(n) => {
                // left multiplication by A on M_n is A ⊗ I: each eigenvalue n times
                let base = spectrum::spectrum_of(self.operator_matrix(a)?)?;
                let mut eig: Vec<C64> = base
                    .eigenvalues
                    .iter()
                    .flat_map(|&l| std::iter::repeat_n(l, *n))
                    .collect();
                spectrum::sort_eigenvalues(&mut eig);
                Ok(SpectrumResult {
                    eigenvalues: eig,
                    ..base
                })
            }
        }
    }

    /// Exhaustive check of associativity, unit and involution laws on basis elements.
    /// Skipped (returns `None`) when `dim³` exceeds `max_triples`.
    pub fn structure_residual(&self, max_triples: usize) -> Option<f64> {
        let d = self.dim();
        if d.checked_pow(3)? > max_triples {
            return None;
        }
        let unit = self.unit();
        let mut worst = 0.0f64;
        let basis: Vec<AlgebraElement> = (0..d).map(|i| self.basis(i)).collect();
        let products: Vec<Vec<AlgebraElement>> = (0..d)
            .map(|i| (0..d).map(|j| self.basis_product(i, j)).collect())
            .collect();
        for i in 0..d {
            for j in 0..d {
                let ab = &products[i][j];
                for k in 0..d {
                    let left = self.multiply(ab, &basis[k]).ok()?;
                    let right = self.multiply(&basis[i], &products[j][k]).ok()?;
                    worst = worst.max(self.max_abs_diff(&left, &right));
                }
                let lhs = self.adjoint(ab).ok()?;
                let rhs = self
                    .multiply(
                        &self.adjoint(&basis[j]).ok()?,
                        &self.adjoint(&basis[i]).ok()?,
                    )
                    .ok()?;
                worst = worst.max(self.max_abs_diff(&lhs, &rhs));
            }
            let b = &basis[i];
            worst = worst.max(self.max_abs_diff(&self.multiply(&unit, b).ok()?, b));
            worst = worst.max(self.max_abs_diff(&self.multiply(b, &unit).ok()?, b));
            worst = worst.max(self.max_abs_diff(&self.adjoint(&self.adjoint(b).ok()?).ok()?, b));
        }
        Some(worst)
    }
}

impl NormedStarAlgebra for StarAlgebra {
    type Element = AlgebraElement;

    fn label(&self) -> String {
        self.label.clone()
    }

    fn dimension(&self) -> usize {
        self.dim()
    }

    fn unit(&self) -> AlgebraElement {
        StarAlgebra::unit(self)
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_coefficients(&self, coeffs: Vec<C64>) -> Result<AlgebraElement> {
        self.element(coeffs)
    }

    fn coefficients(&self, a: &AlgebraElement) -> Vec<C64> {
        a.coeffs.clone()
    }

    fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        StarAlgebra::multiply(self, a, b)
    }

    fn adjoint(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        StarAlgebra::adjoint(self, a)
    }

    fn norm(&self, a: &AlgebraElement, kind: NormKind) -> Result<f64> {
        StarAlgebra::norm(self, a, kind)
    }

    fn spectrum(&self, a: &AlgebraElement) -> Result<SpectrumResult> {
        StarAlgebra::spectrum(self, a)
    }

    fn max_abs_diff(&self, a: &AlgebraElement, b: &AlgebraElement) -> f64 {
        a.coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(p, q)| (p - q).norm())
            .fold(0.0, f64::max)
    }
}
