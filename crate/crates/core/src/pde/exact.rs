use serde::Serialize;

use crate::eigensolve::{beltrami_lambda1, characteristic_constant};
use crate::geometry::Point3;
use crate::special::{bessel_j0, bessel_j0_first_zero, legendre_p};
use crate::{Error, Result};

/// Principal Dirichlet mode of the disk of radius `radius`:
/// `psi(Y) = J0(j |Y| / radius)`, sup-normalised.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiskMode {
    pub radius: f64,
    pub lambda: f64,
}

impl DiskMode {
    pub fn new(radius: f64) -> Self {
        let j = bessel_j0_first_zero();
        Self { radius, lambda: (j / radius).powi(2) }
    }

    /// `None` outside the closed disk.
    pub fn psi(&self, y: [f64; 2]) -> Option<f64> {
        let rho = y[0].hypot(y[1]);
        (rho <= self.radius * (1.0 + 1e-12)).then(|| bessel_j0(self.lambda.sqrt() * rho.min(self.radius)).max(0.0))
    }
}

/// Principal Laplace–Beltrami mode of the polar cap of half-angle `angle`
/// about the positive z-axis: `psi = P_nu(cos theta)` with `nu = alpha_0`
/// (in `R^3`), sup-normalised at the pole.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CapMode {
    pub angle: f64,
    pub alpha0: f64,
}

impl CapMode {
    /// Characteristic constant from the shooting eigenvalue.
    pub fn new(angle: f64) -> Result<Self> {
        let lambda = beltrami_lambda1(angle, 200)?.lambda;
        Ok(Self { angle, alpha0: characteristic_constant(lambda, 3)?.alpha })
    }

    /// `None` outside the closed cap.
    pub fn psi(&self, omega: Point3) -> Option<f64> {
        let n = (omega[0] * omega[0] + omega[1] * omega[1] + omega[2] * omega[2]).sqrt();
        let theta = (omega[2] / n).clamp(-1.0, 1.0).acos();
        (theta <= self.angle * (1.0 + 1e-12)).then(|| legendre_p(self.alpha0, theta.min(self.angle).cos()).0.max(0.0))
    }
}

/// Separable cylinder solution `e^{sqrt(lambda) x} psi_1(Y)`.
pub fn cylinder_exact<P: Fn([f64; 2]) -> Option<f64>>(x: f64, y: [f64; 2], lambda: f64, psi1: P) -> Result<f64> {
    let psi = psi1(y).ok_or(Error::OutsideSection)?;
    Ok((lambda.sqrt() * x).exp() * psi)
}

/// Separable cone solution `r^{alpha_0} psi(omega)`.
pub fn cone_exact<P: Fn(Point3) -> Option<f64>>(r: f64, omega: Point3, alpha0: f64, psi: P) -> Result<f64> {
    let v = psi(omega).ok_or(Error::OutsideCap)?;
    Ok(r.powf(alpha0) * v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn cylinder_examples() {
        let d = DiskMode::new(1.0);
        assert!((cylinder_exact(0.0, [0.0, 0.0], d.lambda, |y| d.psi(y)).unwrap() - 1.0).abs() < 1e-15);
        let x = 2.0 / d.lambda.sqrt();
        let v = cylinder_exact(x, [0.0, 0.0], d.lambda, |y| d.psi(y)).unwrap();
        assert!((v - 2f64.exp()).abs() < 1e-12);
        assert!(matches!(cylinder_exact(0.0, [1.5, 0.0], d.lambda, |y| d.psi(y)), Err(Error::OutsideSection)));
    }

    #[test]
    fn cone_examples() {
        let c = CapMode::new(FRAC_PI_2).unwrap();
        assert!((c.alpha0 - 1.0).abs() < 1e-6);
        let p: [f64; 3] = [0.3, -0.4, 1.2];
        let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        let v = cone_exact(r, [p[0] / r, p[1] / r, p[2] / r], c.alpha0, |w| c.psi(w)).unwrap();
        assert!((v - p[2]).abs() < 1e-5);
        let q = CapMode::new(FRAC_PI_4).unwrap();
        assert_eq!(cone_exact(1.0, [0.0, 0.0, 1.0], q.alpha0, |w| q.psi(w)).unwrap(), 1.0);
        // Boundary of the cap carries (nearly) zero.
        let w = [FRAC_PI_4.sin(), 0.0, FRAC_PI_4.cos()];
        assert!(q.psi(w).unwrap() < 1e-6);
        assert!(matches!(cone_exact(1.0, [1.0, 0.0, 0.0], q.alpha0, |w| q.psi(w)), Err(Error::OutsideCap)));
    }
}
