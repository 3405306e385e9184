//! Special functions needed by the exact separable solutions.

/// Bessel function of the first kind of order zero, by its power series.
///
/// The series is summed until terms drop below machine precision; it is
/// accurate to ~1e-14 for `|x| <= 10`, which covers every use in this crate
/// (arguments never exceed the first zero of `J0`).
pub fn bessel_j0(x: f64) -> f64 {
    let q = -(x * x) / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * kf);
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

/// Bessel function of the first kind of order one (power series).
pub fn bessel_j1(x: f64) -> f64 {
    let q = -(x * x) / 4.0;
    let mut term = x / 2.0;
    let mut sum = term;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * (kf + 1.0));
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

/// First positive zero of `J0`, found by Newton's method (`J0' = -J1`).
pub fn bessel_j0_first_zero() -> f64 {
    let mut x = 2.4;
    for _ in 0..50 {
        let step = bessel_j0(x) / -bessel_j1(x);
        x -= step;
        if step.abs() < 1e-15 {
            break;
        }
    }
    x
}

/// Legendre function `P_nu(x)` for real degree `nu >= 0` and `x in (-1, 1]`,
/// from the hypergeometric series `2F1(-nu, nu + 1; 1; (1 - x) / 2)`.
///
/// Returns the value and its derivative with respect to `x`.
pub fn legendre_p(nu: f64, x: f64) -> (f64, f64) {
    let s = (1.0 - x) / 2.0;
    let mut c = 1.0;
    let mut value = 1.0;
    let mut ds = 0.0;
    let mut spow = 1.0; // s^(k-1)
    for k in 1..200_000 {
        let kf = k as f64;
        c *= (kf - 1.0 - nu) * (kf + nu) / (kf * kf);
        if c == 0.0 {
            break;
        }
        ds += kf * c * spow;
        spow *= s;
        let term = c * spow;
        value += term;
        if term.abs() < 1e-17 * value.abs().max(1e-300) && (kf * c * spow).abs() < 1e-16 {
            break;
        }
    }
    (value, -0.5 * ds)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j0_zero_matches_tabulated_value() {
        assert!((bessel_j0_first_zero() - 2.404_825_557_695_773).abs() < 1e-13);
    }

    #[test]
    fn legendre_integer_degrees_are_polynomials() {
        for &x in &[-0.7, -0.1, 0.0, 0.3, 0.9, 1.0] {
            let (p1, d1) = legendre_p(1.0, x);
            assert!((p1 - x).abs() < 1e-14 && (d1 - 1.0).abs() < 1e-13);
            let (p2, d2) = legendre_p(2.0, x);
            assert!((p2 - 0.5 * (3.0 * x * x - 1.0)).abs() < 1e-13);
            assert!((d2 - 3.0 * x).abs() < 1e-12);
        }
    }
}
