mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use harmonic_growth::asymptotics::linear_fit;
use harmonic_growth::geometry::DomainSpec;
use harmonic_growth::pde::{
    growth_profile, solve_harmonic, solve_harmonic_with, GridChoice, InletCap, OutletCap, SolveOptions,
};
use proptest::prelude::*;

fn exact_cylinder(p: [f64; 3]) -> f64 {
    let j = common::j01();
    (j * p[0]).exp() * common::bessel_j0_integral(j * p[1].hypot(p[2]))
}

fn cylinder_error(h: f64) -> f64 {
    let d = DomainSpec::straight_cylinder(1.0);
    let f = solve_harmonic(&d, 0.0, 2.0, h, InletCap::Exact, OutletCap::Exact).unwrap();
    let mut err: f64 = 0.0;
    for x in [0.5, 1.0, 1.5] {
        for rho in [0.0, 0.25, 0.5, 0.75] {
            let p = [x, rho, 0.0];
            err = err.max((f.value_at(p).unwrap() - exact_cylinder(p)).abs());
        }
    }
    err
}

#[test]
fn cylinder_solve_is_second_order() {
    let e1 = cylinder_error(1.0 / 8.0);
    let e2 = cylinder_error(1.0 / 16.0);
    let e3 = cylinder_error(1.0 / 32.0);
    let p1 = (e1 / e2).log2();
    let p2 = (e2 / e3).log2();
    assert!(p1 > 1.6 && p2 > 1.6, "{e1} {e2} {e3}");
}

#[test]
fn half_ball_harmonic_measure_matches_series() {
    let d = DomainSpec::cone(FRAC_PI_2);
    let f = solve_harmonic(&d, 0.01, 8.0, FRAC_PI_2 / 64.0, InletCap::Zero, OutletCap::One).unwrap();
    assert!(f.max_principle_ok);
    assert!(f.values.iter().all(|v| (-1e-12..=1.0 + 1e-12).contains(v)));
    for p in [[0.0f64, 0.0, 1.0], [1.0, 0.0, 2.0], [0.0, 3.0, 4.0]] {
        let exact = common::half_ball_measure(p, 8.0);
        let v = f.value_at(p).unwrap();
        assert!((v - exact).abs() < 5e-3, "{p:?}: {v} vs {exact}");
    }
}

#[test]
fn cone_slopes_match_legendre_oracle() {
    for cap in [FRAC_PI_4, 1.0] {
        let d = DomainSpec::cone(cap);
        let nu = 0.5 * (-1.0 + (1.0 + 4.0 * common::cap_lambda(cap)).sqrt());
        let f = solve_harmonic(&d, 1.0, 8.0, cap / 32.0, InletCap::Exact, OutletCap::Exact).unwrap();
        let rs: Vec<f64> = (0..=40).map(|k| (8f64.ln() * k as f64 / 40.0).exp()).collect();
        let g = growth_profile(&f, &rs).unwrap();
        let xs: Vec<f64> = g.ts().iter().map(|r| r.ln()).collect();
        let (slope, _) = linear_fit(&xs, &g.values());
        assert!((slope / nu - 1.0).abs() < 0.02, "cap {cap}: {slope} vs {nu}");
    }
}

#[test]
fn lattice_and_axisymmetric_agree_on_paraboloid() {
    let d = DomainSpec::paraboloid(1.0, 0.5);
    let h = 0.125;
    let axi = solve_harmonic(&d, 4.0, 6.0, h, InletCap::Zero, OutletCap::One).unwrap();
    let opts = SolveOptions { grid: GridChoice::Lattice, ..Default::default() };
    let lat = solve_harmonic_with(&d, 4.0, 6.0, h, InletCap::Zero, OutletCap::One, opts).unwrap();
    assert!(lat.max_principle_ok);
    for t in [4.5, 5.0, 5.5] {
        let a = axi.max_on_section(t).unwrap();
        let l = lat.max_on_section(t).unwrap();
        assert!((a / l - 1.0).abs() < 0.15, "{t}: {a} vs {l}");
    }
}

#[test]
fn horn_sections_are_monotone() {
    let d = DomainSpec::horn(1.0);
    let f = solve_harmonic(&d, 2.0, 10.0, 0.1, InletCap::Zero, OutletCap::One).unwrap();
    let m: Vec<f64> = (0..=40).map(|k| f.max_on_section(2.0 + 0.2 * k as f64).unwrap()).collect();
    assert!(m.windows(2).all(|w| w[1] >= w[0]));
}

#[test]
fn slice_csv_has_header_and_rows() {
    let d = DomainSpec::straight_cylinder(1.0);
    let f = solve_harmonic(&d, 0.0, 1.0, 0.125, InletCap::Zero, OutletCap::One).unwrap();
    let mut buf = Vec::new();
    f.write_slice_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rdr.headers().unwrap().len(), 3);
    assert!(rdr.records().count() > 50);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn maximum_principle_holds(a in 0.5f64..2.0, alpha in 0.2f64..0.8, t0 in 2.0f64..6.0, len in 1.0f64..4.0) {
        let d = DomainSpec::paraboloid(a, alpha);
        let h = 0.25 * a * t0.powf(alpha) / 4.0;
        let f = solve_harmonic(&d, t0, t0 + len, h, InletCap::Zero, OutletCap::One).unwrap();
        prop_assert!(f.check_maximum_principle());
        prop_assert!(f.values.iter().all(|v| (-1e-12..=1.0 + 1e-12).contains(v)));
    }
}
