//! Growth of the separable solution in a straight cylinder, measured from a
//! finite-difference solve with exact caps.

use harmonic_growth::asymptotics::linear_fit;
use harmonic_growth::geometry::DomainSpec;
use harmonic_growth::pde::{growth_profile, solve_harmonic, DiskMode, InletCap, OutletCap};

fn main() -> harmonic_growth::Result<()> {
    let d = DomainSpec::straight_cylinder(1.0);
    let expected = DiskMode::new(1.0).lambda.sqrt();
    for h in [1.0 / 8.0, 1.0 / 16.0, 1.0 / 32.0] {
        let f = solve_harmonic(&d, 0.0, 4.0, h, InletCap::Exact, OutletCap::Exact)?;
        let ts: Vec<f64> = (0..=40).map(|k| 0.1 * k as f64).collect();
        let g = growth_profile(&f, &ts)?;
        let (slope, _) = linear_fit(&g.ts(), &g.values());
        println!("h = {h:<8} {:>7} unknowns  slope {slope:.6}  (sqrt(lambda1) = {expected:.6})", f.unknowns());
    }
    Ok(())
}
