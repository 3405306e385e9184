//! Predicted growth from eigenvalue profiles: the cylinder integral for a
//! paraboloid, the cone integral and the Huber lower bound.

use harmonic_growth::asymptotics::{cone_growth_integral, cylinder_growth_integral, huber_lower_bound};
use harmonic_growth::eigensolve::{characteristic_constant, lambda_profile};
use harmonic_growth::geometry::DomainSpec;

fn main() -> harmonic_growth::Result<()> {
    let d = DomainSpec::paraboloid(1.0, 0.5);
    let knots: Vec<f64> = (0..=8).map(|k| 10f64.powf(k as f64 * 0.5)).collect();
    let prof = lambda_profile(&d, &knots, 1.0 / 32.0)?;
    let a = |t: f64| d.profile(t).unwrap();
    println!("paraboloid A = 1, alpha = 1/2");
    for t in [10.0, 100.0, 1e3, 1e4] {
        let v = cylinder_growth_integral(a, |s| prof.eval_unit(s), t, 1e-9)?;
        println!("  t = {t:>7}: log M(t) ~ {v:10.4}   2 sqrt(lambda1) (sqrt t - 1) = {:10.4}", 2.0 * prof.eval_unit(t).sqrt() * (t.sqrt() - 1.0));
    }

    // A slowly opening cone: alpha(r) decreases towards 1.
    let alpha = |r: f64| 1.0 + 1.0 / (1.0 + r.ln());
    println!("slowly varying alpha(r) = 1 + 1/(1 + ln r)");
    for r in [1e2, 1e4, 1e6] {
        let cone = cone_growth_integral(alpha, r, 1e-9)?;
        let huber = huber_lower_bound(alpha, r, 1.0, 1e-9)?;
        println!("  r = {r:>9}: log M~(r) ~ {cone:8.4}, Huber bound log {:8.4}", huber.ln());
    }
    println!("half space alpha = {}", characteristic_constant(2.0, 3)?.alpha);
    Ok(())
}
