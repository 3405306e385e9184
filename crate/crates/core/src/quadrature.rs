//! Adaptive Simpson quadrature.

use crate::{Error, Result};

/// Refinement depth beyond which [`adaptive_simpson`] gives up.
pub const MAX_DEPTH: usize = 40;

/// Integrates `f` over `[a, b]` to absolute error `tol` by adaptive Simpson
/// with the interval-halving error estimate and Richardson correction.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("quadrature tolerance must be positive, got {tol}")));
    }
    if a == b {
        return Ok(0.0);
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    // Split a long interval up front so the first Simpson estimate cannot
    // miss narrow features by sampling only three points.
    let pieces = 8;
    let width = (hi - lo) / pieces as f64;
    let mut total = 0.0;
    for k in 0..pieces {
        let x0 = lo + k as f64 * width;
        let x1 = if k + 1 == pieces { hi } else { x0 + width };
        let (f0, f1) = (f(x0), f(x1));
        let m = 0.5 * (x0 + x1);
        let fm = f(m);
        let whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
        total += refine(&f, x0, x1, f0, fm, f1, whole, tol / pieces as f64, 0)?;
    }
    Ok(sign * total)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if !delta.is_finite() {
        return Err(Error::InvalidArgument("integrand is not finite".into()));
    }
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::QuadratureFailure(MAX_DEPTH));
    }
    Ok(refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)?
        + refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_transcendental() {
        let v = adaptive_simpson(|x| x * x * x, 0.0, 2.0, 1e-12).unwrap();
        assert!((v - 4.0).abs() < 1e-12);
        let v = adaptive_simpson(f64::sin, 0.0, std::f64::consts::PI, 1e-10).unwrap();
        assert!((v - 2.0).abs() < 1e-10);
        let v = adaptive_simpson(|x| 1.0 / x, 1.0, std::f64::consts::E, 1e-11).unwrap();
        assert!((v - 1.0).abs() < 1e-11);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let v = adaptive_simpson(|x| x, 1.0, 0.0, 1e-12).unwrap();
        assert!((v + 0.5).abs() < 1e-14);
    }

    #[test]
    fn singular_integrand_reports_failure() {
        let r = adaptive_simpson(|x: f64| 1.0 / x.abs().sqrt().max(1e-300), -1.0, 1.0, 1e-14);
        assert!(matches!(r, Err(Error::QuadratureFailure(_)) | Err(Error::InvalidArgument(_))));
    }
}
