//! Walk-on-spheres estimates of the harmonic measure of the cut sphere and
//! the reciprocal bound, on a cone and a paraboloid.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use harmonic_growth::geometry::DomainSpec;
use harmonic_growth::measure::{reference_m_tilde, verify_reciprocal_bound};

fn main() -> harmonic_growth::Result<()> {
    let cases = [
        ("half space", DomainSpec::cone(FRAC_PI_2), [0.0, 0.0, 1.0], 8.0),
        ("cone pi/4", DomainSpec::cone(FRAC_PI_4), [0.0, 0.0, 1.0], 4.0),
        ("paraboloid", DomainSpec::paraboloid(1.0, 0.5), [1.0, 0.0, 0.0], 4.0),
    ];
    for (name, d, x0, r) in cases {
        let m = reference_m_tilde(&d, x0, r, 0.1)?;
        let rep = verify_reciprocal_bound(&d, x0, r, m, 20_000, 7)?;
        println!(
            "{name:<11} r = {r}: p_hat = {:.5} +- {:.5}, 1/M~ = {:.5}, {} ({:.1} steps per path)",
            rep.p_hat,
            rep.stderr,
            rep.bound,
            if rep.pass { "bound holds" } else { "bound FAILS" },
            rep.mean_steps
        );
    }
    Ok(())
}
