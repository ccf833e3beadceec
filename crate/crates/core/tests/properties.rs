use proptest::prelude::*;
use twisted_core::algebra::*;
use twisted_core::group::ExtensionSpec;
use twisted_core::twisted::{Decomposition, TwistedElement, TwistedSystem};
use twisted_core::verify::*;

fn system(spec: &str) -> TwistedSystem {
    TwistedSystem::from_extension(&spec.parse::<ExtensionSpec>().unwrap().build().unwrap()).unwrap()
}

fn coeffs(len: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec(
        (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(re, im)| C64::new(re, im)),
        len,
    )
}

fn element(sys: &TwistedSystem, c: Vec<C64>) -> TwistedElement {
    sys.from_coefficients(c).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn q8_convolution_is_associative(a in coeffs(8), b in coeffs(8), c in coeffs(8)) {
        let sys = system("Q8 / <i>");
        let (a, b, c) = (element(&sys, a), element(&sys, b), element(&sys, c));
        let left = sys.convolve(&sys.convolve(&a, &b).unwrap(), &c).unwrap();
        let right = sys.convolve(&a, &sys.convolve(&b, &c).unwrap()).unwrap();
        prop_assert!(sys.max_abs_diff(&left, &right) < 1e-12 * (1.0 + sys.max_abs(&left)));
    }

    #[test]
    fn adjoint_is_anti_multiplicative_and_isometric(a in coeffs(8), b in coeffs(8)) {
        let sys = system("Q8 / <i>");
        let (a, b) = (element(&sys, a), element(&sys, b));
        let lhs = sys.adjoint(&sys.convolve(&a, &b).unwrap()).unwrap();
        let rhs = sys.convolve(&sys.adjoint(&b).unwrap(), &sys.adjoint(&a).unwrap()).unwrap();
        prop_assert!(sys.max_abs_diff(&lhs, &rhs) < 1e-12 * (1.0 + sys.max_abs(&lhs)));
        for kind in [NormKind::L1, NormKind::L2, NormKind::Operator] {
            let n = sys.l1_norm(&a, kind).unwrap();
            prop_assert!((sys.l1_norm(&sys.adjoint(&a).unwrap(), kind).unwrap() - n).abs() <= 1e-12 * n.max(1.0));
        }
    }

    #[test]
    fn l1_with_l1_coefficients_is_submultiplicative(a in coeffs(24), b in coeffs(24)) {
        let sys = system("wr(C2, 3, cyc) / base");
        let (a, b) = (element(&sys, a), element(&sys, b));
        for kind in [NormKind::L1, NormKind::Operator] {
            let ab = sys.l1_norm(&sys.convolve(&a, &b).unwrap(), kind).unwrap();
            prop_assert!(ab <= sys.l1_norm(&a, kind).unwrap() * sys.l1_norm(&b, kind).unwrap() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn decomposition_round_trip_is_exact(f in coeffs(8)) {
        let ext = "D4 / <r>".parse::<ExtensionSpec>().unwrap().build().unwrap();
        let (dec, _) = Decomposition::certified(&ext, 1e-12).unwrap();
        let f = dec.total_algebra().element(f).unwrap();
        let back = dec.from_twisted(&dec.to_twisted(&f).unwrap()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn norms_nest_under_the_probability_weight(f in coeffs(12)) {
        let alg = StarAlgebra::group_algebra(&"C12".parse().unwrap());
        let f = alg.element(f).unwrap();
        let l1 = alg.norm(&f, NormKind::L1).unwrap();
        let l2 = alg.norm(&f, NormKind::L2).unwrap();
        let linf = alg.norm(&f, NormKind::LINF).unwrap();
        prop_assert!(l1 <= l2 * (1.0 + 1e-12) && l2 <= linf * (1.0 + 1e-12));
    }

    #[test]
    fn diff_estimates_are_reproducible(seed in any::<u64>()) {
        let alg = StarAlgebra::group_algebra(&"S3".parse().unwrap());
        let a = diff_constant_estimate(&alg, NormKind::L2, NormKind::Operator, 20, seed, Distribution::Gaussian, 2.0);
        let b = diff_constant_estimate(&alg, NormKind::L2, NormKind::Operator, 20, seed, Distribution::Gaussian, 2.0);
        prop_assert_eq!(a.c_hat.to_bits(), b.c_hat.to_bits());
        prop_assert_eq!(a.worst_seed, b.worst_seed);
    }
}

#[test]
fn battery_csv_is_reproducible() {
    let mut config = SuiteConfig {
        extensions: vec!["C6 / <g^2>".into()],
        suites: vec![Suite::Symmetry, Suite::LiftedDiff, Suite::Srp],
        ..SuiteConfig::default()
    };
    config.samples.symmetry = 40;
    config.samples.diff = 40;
    config.samples.lifted = 40;
    config.samples.srp = 10;
    let a = run_battery(&config).to_csv();
    let b = run_battery(&config).to_csv();
    assert_eq!(a, b);
    config.seed = 1;
    assert_ne!(a, run_battery(&config).to_csv());
}

#[test]
fn symmetry_never_fails_on_built_systems() {
    for spec in DEFAULT_EXTENSIONS {
        let r = symmetry_suite(&system(spec), 100, 3, Distribution::HeavyTailed, 1e-9);
        assert!(r.passed(), "{}", r.to_table());
    }
}
