//! Growth exponent in circular cones: PDE slope of log M~ against log r
//! compared with the Legendre characteristic constant.

use harmonic_growth::asymptotics::linear_fit;
use harmonic_growth::geometry::DomainSpec;
use harmonic_growth::pde::{growth_profile, solve_harmonic, CapMode, InletCap, OutletCap};

fn main() -> harmonic_growth::Result<()> {
    for cap in [0.5, std::f64::consts::FRAC_PI_4, 1.2, std::f64::consts::FRAC_PI_2] {
        let d = DomainSpec::cone(cap);
        let f = solve_harmonic(&d, 1.0, 8.0, cap / 48.0, InletCap::Exact, OutletCap::Exact)?;
        let rs: Vec<f64> = (0..=40).map(|k| 8f64.powf(k as f64 / 40.0)).collect();
        let g = growth_profile(&f, &rs)?;
        let xs: Vec<f64> = g.ts().iter().map(|r| r.ln()).collect();
        let (slope, _) = linear_fit(&xs, &g.values());
        println!("cap {cap:.4}: slope {slope:.5}, alpha0 {:.5}", CapMode::new(cap)?.alpha0);
    }
    Ok(())
}
