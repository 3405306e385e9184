//! The paraboloid experiment: Zero/One solve on [25, 400], measured log M(t)
//! against the cylinder growth integral, anchored at the outer end.

use harmonic_growth::asymptotics::{compare_growth, cylinder_growth_integral, GrowthCurve, Provenance};
use harmonic_growth::geometry::DomainSpec;
use harmonic_growth::pde::{growth_profile, solve_harmonic, DiskMode, InletCap, OutletCap};

fn main() -> harmonic_growth::Result<()> {
    let d = DomainSpec::paraboloid(1.0, 0.5);
    let (t_min, t_max) = (25.0, 400.0);
    let lambda1 = DiskMode::new(1.0).lambda;
    let ts: Vec<f64> = (0..=30).map(|k| t_min + (t_max - t_min) * k as f64 / 30.0).collect();
    let pred = GrowthCurve::from_fn(&ts, Provenance::FormulaCylinder, |t| {
        cylinder_growth_integral(|s: f64| s.sqrt(), |_| lambda1, t, 1e-10)
    })?;
    let f = solve_harmonic(&d, t_min, t_max, 0.2, InletCap::Zero, OutletCap::One)?;
    let meas = growth_profile(&f, &ts)?;
    let shift = pred.value_at(t_max).unwrap() - f.max_on_section(t_max)?.ln();
    let cmp = compare_growth(&pred, &meas.shifted(shift))?;
    println!("{} unknowns, residual {:.1e}", f.unknowns(), f.residual);
    println!("{:>8} {:>12} {:>12} {:>9}", "t", "predicted", "measured", "rho");
    for i in 0..cmp.t.len() {
        println!("{:>8.2} {:>12.5} {:>12.5} {:>9.5}", cmp.t[i], cmp.predicted[i], cmp.measured[i], cmp.rho[i]);
    }
    println!("max |rho| = {:.4}, trend = {:.4}", cmp.max_abs_rho(), cmp.trend);
    Ok(())
}
