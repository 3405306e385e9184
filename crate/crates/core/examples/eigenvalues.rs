//! Principal Dirichlet eigenvalues of planar sections and the
//! characteristic constant of a cone.

use harmonic_growth::eigensolve::{characteristic_constant, dirichlet_lambda1};
use harmonic_growth::geometry::SectionMask;

fn main() -> harmonic_growth::Result<()> {
    for h in [1.0 / 32.0, 1.0 / 64.0, 1.0 / 128.0] {
        let disk = dirichlet_lambda1(&SectionMask::disk(1.0, h)?)?;
        let square = dirichlet_lambda1(&SectionMask::square(1.0, h)?)?;
        println!(
            "h = 1/{:<4} disk {:.6} ({} nodes)  square {:.6}",
            (1.0 / h) as u32,
            disk.lambda,
            disk.coords.len(),
            square.lambda
        );
    }
    println!("limits: disk 5.783186, square {:.6}", 2.0 * std::f64::consts::PI.powi(2));

    for lambda in [2.0, 5.0, 12.0] {
        let c = characteristic_constant(lambda, 3)?;
        println!("lambda = {lambda:>4}: alpha = {:.6}", c.alpha);
    }
    Ok(())
}
