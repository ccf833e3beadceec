//! Library results against values computed here by independent means: explicit
//! representation matrices, closed-form singular values and hand-written characters.

use nalgebra::{DMatrix, Matrix2};
use twisted_core::algebra::*;
use twisted_core::group::{ExtensionSpec, FiniteGroup};
use twisted_core::twisted::{Decomposition, TwistedSystem};
use twisted_core::verify::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// The faithful 2-dimensional representation of Q8, read off element labels.
fn quaternion_matrix(label: &str) -> Matrix2<C64> {
    let (neg, unit) = match label.strip_prefix('-') {
        Some(u) => (true, u),
        None => (false, label),
    };
    let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
    let m = match unit {
        "1" => Matrix2::new(o, z, z, o),
        "i" => Matrix2::new(c(0.0, 1.0), z, z, c(0.0, -1.0)),
        "j" => Matrix2::new(z, o, -o, z),
        "k" => Matrix2::new(z, c(0.0, 1.0), c(0.0, 1.0), z),
        _ => panic!("not a quaternion unit: {label}"),
    };
    if neg {
        -m
    } else {
        m
    }
}

/// The four characters of Q8 through its abelianization C2 × C2.
fn quaternion_character(label: &str, a: bool, b: bool) -> f64 {
    let unit = label.trim_start_matches('-');
    let s = |on: bool| if on { -1.0 } else { 1.0 };
    match unit {
        "1" => 1.0,
        "i" => s(a),
        "j" => s(b),
        "k" => s(a) * s(b),
        _ => unreachable!(),
    }
}

fn eig2(m: Matrix2<C64>) -> [C64; 2] {
    let tr = m[(0, 0)] + m[(1, 1)];
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let disc = (tr * tr - det * 4.0).sqrt();
    [(tr + disc) / 2.0, (tr - disc) / 2.0]
}

#[test]
fn quaternion_table_matches_matrix_representation() {
    let g = FiniteGroup::quaternion();
    for a in 0..8 {
        for b in 0..8 {
            let prod = quaternion_matrix(g.label(a)) * quaternion_matrix(g.label(b));
            assert_eq!(
                prod,
                quaternion_matrix(g.label(g.mul(a, b))),
                "{} * {}",
                g.label(a),
                g.label(b)
            );
        }
    }
}

#[test]
fn q8_spectrum_through_decomposition_matches_irreducible_blocks() {
    let ext = "Q8 / <i>"
        .parse::<ExtensionSpec>()
        .unwrap()
        .build()
        .unwrap();
    let (dec, _) = Decomposition::certified(&ext, 1e-12).unwrap();
    let alg = dec.total_algebra();
    let g = ext.total();
    let w = alg.haar_weight();
    for seed in 0..25 {
        let f = random_element(alg, seed, Distribution::Gaussian).unwrap();
        let mut expected = Vec::new();
        for (a, b) in [(false, false), (true, false), (false, true), (true, true)] {
            let v: C64 = (0..8)
                .map(|t| f.coeffs()[t] * quaternion_character(g.label(t), a, b))
                .sum();
            expected.push(v * w);
        }
        let block: Matrix2<C64> = (0..8)
            .map(|t| quaternion_matrix(g.label(t)) * f.coeffs()[t])
            .sum::<Matrix2<C64>>()
            * c(w, 0.0);
        for l in eig2(block) {
            expected.extend([l, l]);
        }
        let sys = dec.system();
        let got = sys.twisted_spectrum(&dec.to_twisted(&f).unwrap()).unwrap();
        assert!(
            match_spectra(&got.eigenvalues, &expected) < 1e-9,
            "seed {seed}"
        );
    }
}

#[test]
fn cyclic_spectrum_and_operator_norm_are_the_dft() {
    let n = 12;
    let alg = StarAlgebra::group_algebra(&FiniteGroup::cyclic(n).unwrap());
    let w = 1.0 / n as f64;
    for seed in 0..20 {
        let f = random_element(&alg, seed, Distribution::HeavyTailed).unwrap();
        // index t of the cyclic group is g^t
        let dft: Vec<C64> = (0..n)
            .map(|m| {
                (0..n)
                    .map(|t| {
                        f.coeffs()[t]
                            * C64::from_polar(
                                1.0,
                                2.0 * std::f64::consts::PI * (m * t) as f64 / n as f64,
                            )
                    })
                    .sum::<C64>()
                    * w
            })
            .collect();
        let scale = dft.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let spec = alg.spectrum(&f).unwrap();
        assert!(match_spectra(&spec.eigenvalues, &dft) < 1e-12 * scale.max(1.0));
        assert!((alg.norm(&f, NormKind::Operator).unwrap() - scale).abs() < 1e-12 * scale.max(1.0));
    }
}

#[test]
fn two_by_two_schatten_norms_match_closed_form() {
    let m2 = StarAlgebra::matrix_algebra(2).unwrap();
    for seed in 0..30 {
        let a = random_element(&m2, seed, Distribution::Gaussian).unwrap();
        let x = a.coeffs();
        let fro2: f64 = x.iter().map(|z| z.norm_sqr()).sum();
        let det = (x[0] * x[3] - x[1] * x[2]).norm();
        let root = (fro2 * fro2 - 4.0 * det * det).max(0.0).sqrt();
        let s1 = ((fro2 + root) / 2.0).sqrt();
        let s2 = ((fro2 - root) / 2.0).max(0.0).sqrt();
        let close = |u: f64, v: f64| (u - v).abs() <= 1e-12 * v.max(1.0);
        assert!(close(m2.norm(&a, NormKind::Operator).unwrap(), s1));
        assert!(close(
            m2.norm(&a, NormKind::Schatten(1.0)).unwrap(),
            s1 + s2
        ));
        assert!(close(
            m2.norm(&a, NormKind::Schatten(2.0)).unwrap(),
            fro2.sqrt()
        ));
        assert!(close(
            m2.norm(&a, NormKind::Schatten(4.0)).unwrap(),
            (s1.powi(4) + s2.powi(4)).powf(0.25)
        ));
    }
}

#[test]
fn weighted_lp_norms_by_hand() {
    let alg = StarAlgebra::group_algebra(&FiniteGroup::symmetric(3).unwrap());
    let f = alg
        .element((0..6).map(|i| c(i as f64 - 2.0, 1.0)).collect())
        .unwrap();
    let moduli: Vec<f64> = f.coeffs().iter().map(|z| z.norm()).collect();
    let l1 = moduli.iter().sum::<f64>() / 6.0;
    let l2 = (moduli.iter().map(|m| m * m).sum::<f64>() / 6.0).sqrt();
    let linf = moduli.iter().cloned().fold(0.0, f64::max);
    assert!((alg.norm(&f, NormKind::L1).unwrap() - l1).abs() < 1e-14);
    assert!((alg.norm(&f, NormKind::L2).unwrap() - l2).abs() < 1e-14);
    assert_eq!(alg.norm(&f, NormKind::LINF).unwrap(), linf);
}

/// A C2-valued function convolved over C4 with no twist: the product computed by
/// hand as an ordinary convolution of algebra-valued functions.
#[test]
fn trivial_system_is_ordinary_convolution() {
    let h = FiniteGroup::cyclic(4).unwrap();
    let k = StarAlgebra::group_algebra(&FiniteGroup::cyclic(2).unwrap());
    let sys = TwistedSystem::trivial(h.clone(), k.clone());
    let a = random_element(&sys, 1, Distribution::Gaussian).unwrap();
    let b = random_element(&sys, 2, Distribution::Gaussian).unwrap();
    let got = sys.convolve(&a, &b).unwrap();
    for x in 0..4 {
        let mut want = k.zero();
        for y in 0..4 {
            let term = k
                .multiply(&sys.value(&a, y), &sys.value(&b, (x + 4 - y) % 4))
                .unwrap();
            want = k.add(&want, &term).unwrap();
        }
        assert!(k.max_abs_diff(&sys.value(&got, x), &want) < 1e-12);
    }
    let star = sys.adjoint(&a).unwrap();
    for x in 0..4 {
        let want = k.adjoint(&sys.value(&a, (4 - x) % 4)).unwrap();
        assert!(k.max_abs_diff(&sys.value(&star, x), &want) < 1e-15);
    }
}

/// `‖ab‖_2 ≤ ‖L_a‖·‖b‖_2` and `‖ST‖_p ≤ ‖S‖·‖T‖_p` give constant one, and the lift
/// keeps it.
#[test]
fn hilbert_and_schatten_constants_are_one() {
    let s3 = StarAlgebra::group_algebra(&FiniteGroup::symmetric(3).unwrap());
    let r = diff_constant_estimate(
        &s3,
        NormKind::L2,
        NormKind::Operator,
        1000,
        11,
        Distribution::HeavyTailed,
        1.0 + 1e-9,
    );
    assert!(r.passed(), "{r:?}");
    let m8 = StarAlgebra::matrix_algebra(8).unwrap();
    for p in [1.0, 2.0, 4.0] {
        let r = diff_constant_estimate(
            &m8,
            NormKind::Schatten(p),
            NormKind::Operator,
            300,
            12,
            Distribution::Gaussian,
            1.0 + 1e-9,
        );
        assert!(r.passed(), "{r:?}");
    }
    let ext = "Q8 / <i>"
        .parse::<ExtensionSpec>()
        .unwrap()
        .build()
        .unwrap();
    let sys = TwistedSystem::from_extension(&ext).unwrap();
    let r = lifted_diff_check(
        &sys,
        NormKind::L2,
        NormKind::Operator,
        500,
        13,
        Distribution::Gaussian,
        1.0,
        1e-9,
    );
    assert!(r.passed(), "{r:?}");
    let trivial = TwistedSystem::trivial(
        FiniteGroup::cyclic(4).unwrap(),
        StarAlgebra::matrix_algebra(4).unwrap(),
    );
    let r = lifted_diff_check(
        &trivial,
        NormKind::Schatten(2.0),
        NormKind::Operator,
        500,
        14,
        Distribution::Gaussian,
        1.0,
        1e-9,
    );
    assert!(r.passed(), "{r:?}");
}

#[test]
fn operator_matrix_of_a_matrix_algebra_is_the_matrix() {
    let m3 = StarAlgebra::matrix_algebra(3).unwrap();
    let a = random_element(&m3, 5, Distribution::Gaussian).unwrap();
    let direct = DMatrix::from_row_slice(3, 3, a.coeffs());
    assert_eq!(m3.operator_matrix(&a).unwrap(), direct);
}
