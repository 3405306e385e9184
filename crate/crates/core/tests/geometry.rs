use std::f64::consts::PI;

use harmonic_growth::geometry::{
    certify_conelike, certify_cylinderlike, certify_cylinderlike_with, hausdorff_distance, rescale_conelike,
    rescale_cylinderlike, section_at, ConeWindow, CertifyOptions, CylinderWindow, DomainKind, DomainSpec,
};
use proptest::prelude::*;

const SCALES: [f64; 4] = [10.0, 100.0, 1e3, 1e4];

fn cloud(n: usize) -> impl Strategy<Value = Vec<[f64; 3]>> {
    prop::collection::vec(prop::array::uniform3(-5.0f64..5.0), 1..n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hausdorff_is_a_metric(a in cloud(30), b in cloud(30), c in cloud(30)) {
        let ab = hausdorff_distance(&a, &b).unwrap();
        let ba = hausdorff_distance(&b, &a).unwrap();
        prop_assert!(ab >= 0.0);
        prop_assert_eq!(ab, ba);
        prop_assert_eq!(hausdorff_distance(&a, &a).unwrap(), 0.0);
        let ac = hausdorff_distance(&a, &c).unwrap();
        let cb = hausdorff_distance(&c, &b).unwrap();
        prop_assert!(ab <= ac + cb + 1e-12);
    }

    #[test]
    fn hausdorff_of_translate_is_at_most_shift(a in cloud(30), v in prop::array::uniform3(-1.0f64..1.0)) {
        let b: Vec<[f64; 3]> = a.iter().map(|p| [p[0] + v[0], p[1] + v[1], p[2] + v[2]]).collect();
        let shift = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        prop_assert!(hausdorff_distance(&a, &b).unwrap() <= shift + 1e-12);
    }

    #[test]
    fn cylinder_rescaling_is_a_fixed_point(t in 10.0f64..1e5, radius in 0.5f64..3.0) {
        let d = DomainSpec::straight_cylinder(radius);
        let s = rescale_cylinderlike(&d, t, CylinderWindow { half_length: 1.0, radius: 1.5 }, 400).unwrap();
        prop_assert!(s.hausdorff().unwrap() < 1e-12);
    }

    #[test]
    fn cone_rescaling_is_invariant(t in 1.0f64..1e4, cap in 0.2f64..1.5) {
        let s = rescale_conelike(&DomainSpec::cone(cap), t, ConeWindow::default(), 400).unwrap();
        prop_assert!(s.hausdorff().unwrap() < 1e-9);
    }
}

#[test]
fn empty_cloud_is_rejected() {
    let a: Vec<[f64; 2]> = vec![];
    assert!(hausdorff_distance(&a, &[[0.0, 0.0]]).is_err());
}

#[test]
fn paraboloid_distance_decays_like_power_law() {
    let d = DomainSpec::paraboloid(1.0, 0.5);
    let w = CylinderWindow::default();
    let d1 = rescale_cylinderlike(&d, 100.0, w, 2000).unwrap().hausdorff().unwrap();
    let d2 = rescale_cylinderlike(&d, 1e4, w, 2000).unwrap().hausdorff().unwrap();
    // The profile slope at scale t is t^{-1/2} / 2 after rescaling, so two decades give a factor 10.
    assert!(d1 / d2 > 5.0, "{d1} {d2}");
}

#[test]
fn paraboloid_is_cylinder_like() {
    let opts = CertifyOptions { h_unit: 1.0 / 16.0, ..Default::default() };
    let r = certify_cylinderlike_with(&DomainSpec::paraboloid(1.0, 0.5), &SCALES, CylinderWindow::default(), opts)
        .unwrap();
    assert!(r.pass, "{:?}", r.flags);
    let a_over_t: Vec<f64> = r.rows.iter().map(|row| row.a_over_t.unwrap()).collect();
    assert!(a_over_t.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn cone_is_cone_like() {
    let r = certify_conelike(&DomainSpec::cone(PI / 4.0), &SCALES, ConeWindow::default()).unwrap();
    assert!(r.pass, "{:?}", r.flags);
    let last = r.rows.last().unwrap();
    assert!((last.alpha.unwrap() - last.alpha1.unwrap()).abs() < 0.02);
}

#[test]
fn cone_is_not_cylinder_like() {
    let opts = CertifyOptions { h_unit: 1.0 / 16.0, ..Default::default() };
    let r = certify_cylinderlike_with(&DomainSpec::cone(PI / 4.0), &SCALES, CylinderWindow::default(), opts).unwrap();
    assert!(!r.pass);
    assert!(r.window_clipped);
}

#[test]
fn paraboloid_is_not_cone_like() {
    let r = certify_conelike(&DomainSpec::paraboloid(1.0, 0.5), &SCALES, ConeWindow::default()).unwrap();
    assert!(!r.pass, "{:?}", r.flags);
}

#[test]
fn elliptic_sections_scale_with_profile() {
    let d = DomainSpec::elliptic_paraboloid(1.0, 0.5, 0.5);
    let h_unit = 1.0 / 16.0;
    let m1 = section_at(&d, 1.0, h_unit).unwrap();
    let m2 = section_at(&d, 100.0, 10.0 * h_unit).unwrap();
    // Sections are similar, so a grid proportional to the profile gives the same mask.
    assert_eq!(m1.len(), m2.len());
    assert!((m2.unit_spacing() - m1.unit_spacing()).abs() < 1e-12);
}

#[test]
fn domain_json_round_trip() {
    let d = DomainSpec::elliptic_paraboloid(2.0, 0.25, 0.5);
    let s = serde_json::to_string(&d).unwrap();
    let back: DomainSpec = serde_json::from_str(&s).unwrap();
    assert_eq!(back, d);
    let parsed: DomainSpec = serde_json::from_str(r#"{"kind":"Paraboloid","A":1.0,"alpha":0.5}"#).unwrap();
    assert_eq!(parsed.kind, DomainKind::Paraboloid);
    assert!(serde_json::from_str::<DomainSpec>(r#"{"kind":"torus"}"#).is_err());
}

#[test]
fn invalid_domains_are_rejected() {
    assert!(DomainSpec::paraboloid(1.0, 1.0).validate().is_err());
    assert!(DomainSpec::paraboloid(-1.0, 0.5).validate().is_err());
    assert!(DomainSpec::cone(0.0).validate().is_err());
    assert!(DomainSpec::elliptic_paraboloid(1.0, 0.5, 1.5).validate().is_err());
    assert!(certify_cylinderlike(&DomainSpec::paraboloid(1.0, 1.0), &SCALES, CylinderWindow::default()).is_err());
}
