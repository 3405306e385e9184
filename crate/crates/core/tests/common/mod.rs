//! Independent oracles shared by the integration tests. Nothing here calls
//! into the crate's numerical code.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Composite trapezoid rule with `n` intervals.
pub fn trapezoid<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = 0.5 * (f(a) + f(b));
    for k in 1..n {
        s += f(a + k as f64 * h);
    }
    s * h
}

/// `J0(x) = (1/pi) ∫_0^pi cos(x sin t) dt`; the trapezoid rule is
/// spectrally accurate for this periodic integrand.
pub fn bessel_j0_integral(x: f64) -> f64 {
    trapezoid(|t| (x * t.sin()).cos(), 0.0, PI, 400) / PI
}

/// Bisection for a root of `f` bracketed by `[lo, hi]`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 * hi.abs().max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// First zero of `J0` by bisection on the integral representation.
pub fn j01() -> f64 {
    bisect(bessel_j0_integral, 2.0, 3.0)
}

/// Laplace's integral `P_nu(cos theta) = (1/pi) ∫_0^pi (cos theta + i sin theta cos phi)^nu dphi`
/// for `theta < pi/2`.
pub fn legendre_laplace(nu: f64, theta: f64) -> f64 {
    let (c, s) = (theta.cos(), theta.sin());
    let f = |phi: f64| {
        let (re, im) = (c, s * phi.cos());
        let m = re.hypot(im);
        m.powf(nu) * (nu * im.atan2(re)).cos()
    };
    trapezoid(f, 0.0, PI, 2000) / PI
}

/// Principal cap eigenvalue `nu (nu + 1)` with `P_nu(cos cap) = 0`, for
/// caps below the hemisphere.
pub fn cap_lambda(cap: f64) -> f64 {
    // Scan for the first sign change in nu, then bisect.
    let step = 0.02;
    let mut lo = 0.0;
    while legendre_laplace(lo + step, cap) > 0.0 {
        lo += step;
    }
    let nu = bisect(|nu| legendre_laplace(nu, cap), lo, lo + step);
    nu * (nu + 1.0)
}

/// Integer-degree Legendre polynomial by the three-term recurrence.
pub fn legendre_poly(l: usize, x: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, x);
    if l == 0 {
        return 1.0;
    }
    for k in 1..l {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Harmonic measure of the upper hemisphere of radius `radius` in the
/// half-ball `{|xi| < radius, z > 0}` seen from `p`, by the odd Legendre series.
pub fn half_ball_measure(p: [f64; 3], radius: f64) -> f64 {
    let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    let cos = p[2] / r;
    let mut sum = 0.0;
    for l in (1..120).step_by(2) {
        let c = (2 * l + 1) as f64 * trapezoid(|x| legendre_poly(l, x), 0.0, 1.0, 20_000);
        sum += c * (r / radius).powi(l as i32) * legendre_poly(l, cos);
    }
    sum
}

/// Exit probability through the outer sphere of the annulus `r0 < |x| < r1`
/// from radius `s`.
pub fn annulus_probability(r0: f64, s: f64, r1: f64) -> f64 {
    (1.0 / r0 - 1.0 / s) / (1.0 / r0 - 1.0 / r1)
}

/// Distance from `(x, rho)` to the meridian curve `rho = a(s)` sampled at
/// `n + 1` points of `[lo, hi]`.
pub fn dense_profile_distance<F: Fn(f64) -> f64>(a: F, x: f64, rho: f64, lo: f64, hi: f64, n: usize) -> f64 {
    (0..=n)
        .map(|k| {
            let s = lo + (hi - lo) * k as f64 / n as f64;
            (x - s).hypot(rho - a(s))
        })
        .fold(f64::INFINITY, f64::min)
}

/// Aitken / Richardson extrapolation from three values on grids refined by
/// a constant ratio; also returns the observed order.
pub fn richardson3(f1: f64, f2: f64, f3: f64, ratio: f64) -> (f64, f64) {
    let p = ((f1 - f2) / (f2 - f3)).ln() / ratio.ln();
    (f3 + (f3 - f2) / (ratio.powf(p) - 1.0), p)
}
