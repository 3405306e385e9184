//! Laplace-Beltrami eigenvalues of polar caps by Legendre shooting,
//! cross-checked by the stereographic finite-difference solver.

use harmonic_growth::eigensolve::{beltrami_lambda1, beltrami_lambda1_fd, characteristic_constant};

fn main() -> harmonic_growth::Result<()> {
    println!("{:>8} {:>14} {:>10} {:>12}", "angle", "lambda", "alpha", "lambda*th^2");
    for cap in [0.05, 0.2, std::f64::consts::FRAC_PI_4, 1.0, std::f64::consts::FRAC_PI_2, 2.5] {
        let l = beltrami_lambda1(cap, 200)?.lambda;
        let a = characteristic_constant(l, 3)?.alpha;
        println!("{cap:>8.4} {l:>14.6} {a:>10.6} {:>12.6}", l * cap * cap);
    }

    let cap = std::f64::consts::FRAC_PI_3;
    let shoot = beltrami_lambda1(cap, 200)?.lambda;
    let h = (0.5 * cap).tan() / 64.0;
    let fd = beltrami_lambda1_fd(|_, z| z > cap.cos(), cap * 1.05, h)?.lambda;
    println!("pi/3 cap: shooting {shoot:.6}, finite differences {fd:.6}");
    Ok(())
}
