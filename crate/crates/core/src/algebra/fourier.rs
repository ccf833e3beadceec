use std::collections::{HashMap, VecDeque};
use std::f64::consts::TAU;

use super::{AlgebraElement, StarAlgebra, C64};
use crate::error::{Error, Result};
use crate::group::{CayleyTable, FiniteGroup};

/// The character group of a finite abelian group.
///
/// Each character is stored as a homomorphism into `Z_m`, `m` the exponent of the
/// group, so `χ(t) = exp(2πi·k/m)` with `k = values[χ][t]`. Index 0 is the trivial
/// character.
#[derive(Clone, Debug)]
pub struct DualGroup {
    exponent: usize,
    values: Vec<Vec<usize>>,
    group: FiniteGroup,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Builds the character group of `k`; fails with `NotAbelian` otherwise.
pub fn dual_group(k: &FiniteGroup) -> Result<DualGroup> {
    if !k.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let n = k.order();
    let exponent = (0..n)
        .map(|t| k.element_order(t))
        .fold(1, |m, o| m / gcd(m, o) * o);
    let gens = k.generators();
    let orders: Vec<usize> = gens.iter().map(|&g| k.element_order(g)).collect();

    let total: usize = orders.iter().product();
    let mut values = Vec::new();
    for idx in 0..total {
        // mixed-radix decode, last generator fastest
        let mut rest = idx;
        let mut images = vec![0usize; gens.len()];
        for i in (0..gens.len()).rev() {
            images[i] = (rest % orders[i]) * (exponent / orders[i]);
            rest /= orders[i];
        }
        if let Some(v) = character_from_images(k, &gens, &images, exponent) {
            values.push(v);
        }
    }
    assert_eq!(
        values.len(),
        n,
        "a finite abelian group has as many characters as elements"
    );

    let index: HashMap<&[usize], usize> = values
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_slice(), i))
        .collect();
    let rows: Vec<Vec<usize>> = values
        .iter()
        .map(|a| {
            values
                .iter()
                .map(|b| {
                    let prod: Vec<usize> =
                        a.iter().zip(b).map(|(x, y)| (x + y) % exponent).collect();
                    index[prod.as_slice()]
                })
                .collect()
        })
        .collect();
    let labels = (0..n).map(|i| format!("chi{i}")).collect();
    let table = CayleyTable::new(rows, Some(labels))?;
    let group = FiniteGroup::from_table(format!("dual({})", k.name()), table)?;
    Ok(DualGroup {
        exponent,
        values,
        group,
    })
}

/// Extends generator images to a homomorphism `K → Z_m`, or `None` when inconsistent.
fn character_from_images(
    k: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
    m: usize,
) -> Option<Vec<usize>> {
    let mut value = vec![usize::MAX; k.order()];
    value[k.identity()] = 0;
    let mut queue = VecDeque::from([k.identity()]);
    while let Some(t) = queue.pop_front() {
        for (&g, &img) in gens.iter().zip(images) {
            let u = k.mul(t, g);
            let v = (value[t] + img) % m;
            if value[u] == usize::MAX {
                value[u] = v;
                queue.push_back(u);
            } else if value[u] != v {
                return None;
            }
        }
    }
    Some(value)
}

impl DualGroup {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    /// `χ(t)`.
    pub fn character(&self, chi: usize, t: usize) -> C64 {
        C64::from_polar(1.0, TAU * self.values[chi][t] as f64 / self.exponent as f64)
    }

    fn check(&self, alg: &StarAlgebra) -> Result<()> {
        match alg.group() {
            Some(g) if g.order() == self.order() => Ok(()),
            _ => Err(Error::Mismatch),
        }
    }

    /// `f̂(χ) = w·Σ_t f(t)·conj(χ(t))`. Turns convolution into pointwise product.
    pub fn fourier_transform(&self, alg: &StarAlgebra, f: &AlgebraElement) -> Result<Vec<C64>> {
        self.check(alg)?;
        let w = alg.haar_weight();
        Ok((0..self.order())
            .map(|chi| {
                let s: C64 = f
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(t, v)| v * self.character(chi, t).conj())
                    .sum();
                s * w
            })
            .collect())
    }

    /// Inverse of [`fourier_transform`](Self::fourier_transform):
    /// `f(t) = (1/(w·|K|))·Σ_χ f̂(χ)·χ(t)`.
    pub fn inverse_transform(&self, alg: &StarAlgebra, fhat: &[C64]) -> Result<AlgebraElement> {
        self.check(alg)?;
        if fhat.len() != self.order() {
            return Err(Error::Mismatch);
        }
        let norm = 1.0 / (alg.haar_weight() * self.order() as f64);
        let coeffs = (0..self.order())
            .map(|t| {
                let s: C64 = fhat
                    .iter()
                    .enumerate()
                    .map(|(chi, v)| v * self.character(chi, t))
                    .sum();
                s * norm
            })
            .collect();
        alg.element(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_element, Distribution, NormedStarAlgebra};

    #[test]
    fn dual_of_c4_is_cyclic_and_values_are_roots_of_unity() {
        let k = FiniteGroup::cyclic(4).unwrap();
        let d = dual_group(&k).unwrap();
        assert_eq!(d.order(), 4);
        assert_eq!(d.exponent(), 4);
        assert!(d.group().cyclic_generator().is_some());
        // the character sending g to i
        let chi = (0..4)
            .find(|&c| (d.character(c, 1) - C64::new(0.0, 1.0)).norm() < 1e-15)
            .unwrap();
        assert!((d.character(chi, 2) + 1.0).norm() < 1e-15);
    }

    #[test]
    fn dual_of_klein_like_group_is_not_cyclic() {
        let k: FiniteGroup = "C2 x C4".parse().unwrap();
        let d = dual_group(&k).unwrap();
        assert_eq!(d.order(), 8);
        assert!(d.group().cyclic_generator().is_none());
        assert!(crate::group::find_isomorphism(d.group(), &k)
            .unwrap()
            .is_some());
    }

    #[test]
    fn nonabelian_rejected() {
        assert_eq!(
            dual_group(&FiniteGroup::symmetric(3).unwrap()).err(),
            Some(Error::NotAbelian)
        );
    }

    #[test]
    fn convolution_becomes_pointwise() {
        for expr in ["C8", "C2 x C4", "C1"] {
            let k: FiniteGroup = expr.parse().unwrap();
            let alg = StarAlgebra::group_algebra(&k);
            let d = dual_group(&k).unwrap();
            for seed in 0..20 {
                let f = random_element(&alg, seed, Distribution::Gaussian).unwrap();
                let g = random_element(&alg, seed + 99, Distribution::Gaussian).unwrap();
                let fg = d
                    .fourier_transform(&alg, &alg.multiply(&f, &g).unwrap())
                    .unwrap();
                let (fh, gh) = (
                    d.fourier_transform(&alg, &f).unwrap(),
                    d.fourier_transform(&alg, &g).unwrap(),
                );
                for i in 0..d.order() {
                    assert!((fg[i] - fh[i] * gh[i]).norm() < 1e-12);
                }
                let back = d.inverse_transform(&alg, &fh).unwrap();
                assert!(alg.max_abs_diff(&back, &f) < 1e-12);
                // the adjoint goes to the complex conjugate
                let fs = d
                    .fourier_transform(&alg, &alg.adjoint(&f).unwrap())
                    .unwrap();
                for i in 0..d.order() {
                    assert!((fs[i] - fh[i].conj()).norm() < 1e-12);
                }
            }
        }
    }
}
