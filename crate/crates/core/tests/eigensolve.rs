mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

use harmonic_growth::eigensolve::{
    beltrami_lambda1, beltrami_lambda1_fd, characteristic_constant, dirichlet_lambda1, lambda_profile,
    spherical_section_alpha,
};
use harmonic_growth::geometry::{section_at, DomainSpec, SectionMask};
use proptest::prelude::*;

#[test]
fn disk_converges_to_bessel_zero() {
    let j2 = common::j01().powi(2);
    let mut prev_err = f64::INFINITY;
    for h in [1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0] {
        let l = dirichlet_lambda1(&SectionMask::disk(1.0, h).unwrap()).unwrap().lambda;
        let err = (l - j2).abs();
        assert!(err < prev_err, "h = {h}: {l}");
        prev_err = err;
    }
    assert!(prev_err / j2 < 0.015);
}

#[test]
fn square_matches_discrete_and_continuous_values() {
    let h = 1.0 / 32.0;
    let l = dirichlet_lambda1(&SectionMask::square(1.0, h).unwrap()).unwrap().lambda;
    let discrete = 8.0 / (h * h) * (PI * h / 2.0).sin().powi(2);
    assert!((l - discrete).abs() < 1e-6 * discrete);
    assert!((l / (2.0 * PI * PI) - 1.0).abs() < 2e-3);
}

#[test]
fn eigenfunctions_are_positive() {
    for mask in [SectionMask::disk(1.0, 1.0 / 24.0).unwrap(), SectionMask::square(2.0, 0.1).unwrap()] {
        let r = dirichlet_lambda1(&mask).unwrap();
        assert!(r.is_positive());
        assert!(r.eigenfunction.iter().all(|v| *v > 0.0));
    }
    for cap in [0.3, 1.0, 2.0] {
        assert!(beltrami_lambda1(cap, 50).unwrap().is_positive());
    }
}

#[test]
fn nested_disks_and_caps_are_monotone() {
    let h = 1.0 / 32.0;
    let small = dirichlet_lambda1(&SectionMask::disk(0.8, h).unwrap()).unwrap().lambda;
    let large = dirichlet_lambda1(&SectionMask::disk(1.0, h).unwrap()).unwrap().lambda;
    assert!(small >= large);
    let caps: Vec<f64> = [0.2, 0.5, 1.0, 1.5, 2.5].iter().map(|&c| beltrami_lambda1(c, 20).unwrap().lambda).collect();
    assert!(caps.windows(2).all(|w| w[0] > w[1]), "{caps:?}");
}

#[test]
fn caps_match_legendre_oracle() {
    for cap in [0.4, FRAC_PI_3, 1.2, FRAC_PI_2 - 0.01] {
        let ours = beltrami_lambda1(cap, 50).unwrap().lambda;
        let oracle = common::cap_lambda(cap);
        assert!((ours / oracle - 1.0).abs() < 1e-6, "cap {cap}: {ours} vs {oracle}");
    }
}

#[test]
fn small_caps_approach_flat_disk() {
    let j2 = common::j01().powi(2);
    for cap in [0.05, 0.02, 0.01] {
        let ratio = beltrami_lambda1(cap, 50).unwrap().lambda * cap * cap / j2;
        assert!((0.99..=1.01).contains(&ratio), "cap {cap}: {ratio}");
    }
}

#[test]
fn stereographic_fd_agrees_with_shooting() {
    let cap = FRAC_PI_3;
    let exact = beltrami_lambda1(cap, 50).unwrap().lambda;
    let radius = (0.5 * cap).tan();
    let fd = |n: f64| {
        beltrami_lambda1_fd(move |_, z| z > cap.cos(), cap * 1.05, radius / n).unwrap().lambda
    };
    let (a, b, c) = (fd(24.0), fd(48.0), fd(96.0));
    assert!((c / exact - 1.0).abs() < 0.02, "{c} vs {exact}");
    let (extrapolated, _) = common::richardson3(a, b, c, 2.0);
    assert!((extrapolated / exact - 1.0).abs() < 0.005, "{extrapolated} vs {exact}");
}

#[test]
fn elliptic_profile_follows_scaling_law() {
    let d = DomainSpec::elliptic_paraboloid(1.0, 0.5, 0.5);
    let h_unit = 1.0 / 32.0;
    let unit = dirichlet_lambda1(&section_at(&d, 1.0, h_unit).unwrap()).unwrap().lambda;
    let prof = lambda_profile(&d, &[1.0, 4.0, 16.0, 64.0], h_unit).unwrap();
    for (t, l) in prof.ts.iter().zip(&prof.lambda) {
        assert!((l * t / unit - 1.0).abs() < 1e-6, "t = {t}");
    }
    // Interpolation between knots keeps the power law.
    assert!((prof.eval(8.0) * 8.0 / unit - 1.0).abs() < 1e-6);
}

#[test]
fn elliptic_spherical_sections_use_fd() {
    let d = DomainSpec::elliptic_paraboloid(1.0, 0.5, 0.5);
    let round = DomainSpec::paraboloid(1.0, 0.5);
    let r = 100.0;
    let a_e = spherical_section_alpha(&d, r, 48).unwrap().unwrap().alpha;
    let a_c = spherical_section_alpha(&round, r, 48).unwrap().unwrap().alpha;
    // The elliptic section is thinner, so its constant is larger.
    assert!(a_e > a_c);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn scaling_law(c in prop::sample::select(vec![0.5, 2.0, 4.0])) {
        let h = 1.0 / 24.0;
        let base = dirichlet_lambda1(&SectionMask::disk(1.0, h).unwrap()).unwrap().lambda;
        // Same grid in units of the radius: the discrete problem is exactly similar.
        let scaled = dirichlet_lambda1(&SectionMask::disk(c, c * h).unwrap()).unwrap().lambda;
        let disc = (base - common::j01().powi(2)).abs();
        prop_assert!((scaled * c * c - base).abs() <= 2.0 * disc + 1e-9);
    }

    #[test]
    fn characteristic_constant_is_increasing(l1 in 0.01f64..100.0, dl in 1e-6f64..10.0, d in 3usize..7) {
        let a = characteristic_constant(l1, d).unwrap();
        let b = characteristic_constant(l1 + dl, d).unwrap();
        prop_assert!(b.alpha > a.alpha);
        prop_assert!(a.quadratic_residual() < 1e-12);
    }

    #[test]
    fn nested_caps(a in 0.1f64..2.8, b in 0.1f64..2.8) {
        prop_assume!((a - b).abs() > 1e-3);
        let (small, large) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(beltrami_lambda1(small, 10).unwrap().lambda > beltrami_lambda1(large, 10).unwrap().lambda);
    }
}
