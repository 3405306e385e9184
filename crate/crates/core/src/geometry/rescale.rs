use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::{hausdorff_distance, DomainKind, DomainSpec, Point3, SphericalSection};
use crate::{Error, Result};

/// Compact window `[-half_length, half_length] x closed ball(0, radius)` in
/// the rescaled cylinder coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylinderWindow {
    pub half_length: f64,
    pub radius: f64,
}

impl Default for CylinderWindow {
    fn default() -> Self {
        Self { half_length: 1.0, radius: 2.0 }
    }
}

/// Spherical shell `r_min <= |xi| <= r_max` in rescaled cone coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConeWindow {
    pub r_min: f64,
    pub r_max: f64,
}

impl Default for ConeWindow {
    fn default() -> Self {
        Self { r_min: 0.5, r_max: 2.0 }
    }
}

/// Point clouds of a rescaled domain and of its reference set on a window.
#[derive(Debug, Clone)]
pub struct RescaledSample {
    pub t: f64,
    pub gamma_boundary: Vec<Point3>,
    pub gamma_interior: Vec<Point3>,
    pub reference_boundary: Vec<Point3>,
    pub reference_interior: Vec<Point3>,
}

impl RescaledSample {
    pub fn gamma_cloud(&self) -> Vec<Point3> {
        [self.gamma_boundary.as_slice(), self.gamma_interior.as_slice()].concat()
    }

    pub fn reference_cloud(&self) -> Vec<Point3> {
        [self.reference_boundary.as_slice(), self.reference_interior.as_slice()].concat()
    }

    /// Hausdorff distance between the rescaled domain and the reference on
    /// the window.
    pub fn hausdorff(&self) -> Result<f64> {
        hausdorff_distance(&self.gamma_cloud(), &self.reference_cloud())
    }
}

const RING_FRACTIONS: [f64; 3] = [0.0, 1.0 / 3.0, 2.0 / 3.0];
const ANGLES: usize = 24;

/// Radial factor of the rescaled section: `a(t + a(t) x) / a(t)`.
fn radial_factor(domain: &DomainSpec, t: f64, x: f64) -> Result<f64> {
    let a = domain.profile(t).ok_or_else(|| Error::Unsupported(format!("{:?} has no bounded section at t = {t}", domain.kind)))?;
    let b = domain
        .profile(t + a * x)
        .ok_or_else(|| Error::Unsupported(format!("no bounded section at x = {}", t + a * x)))?;
    Ok(b / a)
}

/// Clouds of `Gamma_t = (Omega_t - t e_1) / a(t)` and of the reference
/// cylinder `R x D` (`D` the unit cross-shape) on the window.
pub fn rescale_cylinderlike(domain: &DomainSpec, t: f64, window: CylinderWindow, n_samples: usize) -> Result<RescaledSample> {
    domain.validate()?;
    if !(t > 0.0) {
        return Err(Error::InvalidArgument(format!("scale must be positive, got {t}")));
    }
    let a = domain.profile(t).ok_or_else(|| Error::Unsupported(format!("{:?} is not cylinder-like", domain.kind)))?;
    let slab = t / (2.0 * a);
    if window.half_length >= slab {
        return Err(Error::WindowTooLarge(format!(
            "half-length {} reaches the rescaled slab half-width {slab}",
            window.half_length
        )));
    }
    let per_x = 1 + RING_FRACTIONS.len() * ANGLES;
    let nx = (n_samples / per_x).max(8);
    let r2 = window.radius * window.radius;
    let mut s = RescaledSample {
        t,
        gamma_boundary: Vec::new(),
        gamma_interior: Vec::new(),
        reference_boundary: Vec::new(),
        reference_interior: Vec::new(),
    };
    let push = |cloud: &mut Vec<Point3>, x: f64, y: [f64; 2]| {
        if y[0] * y[0] + y[1] * y[1] <= r2 {
            cloud.push([x, y[0], y[1]]);
        }
    };
    for i in 0..nx {
        let x = -window.half_length + 2.0 * window.half_length * i as f64 / (nx - 1) as f64;
        let g = radial_factor(domain, t, x)?;
        for k in 0..ANGLES {
            let c = domain.cross_point(TAU * k as f64 / ANGLES as f64);
            push(&mut s.gamma_boundary, x, [g * c[0], g * c[1]]);
            push(&mut s.reference_boundary, x, c);
            for &f in &RING_FRACTIONS[1..] {
                push(&mut s.gamma_interior, x, [f * g * c[0], f * g * c[1]]);
                push(&mut s.reference_interior, x, [f * c[0], f * c[1]]);
            }
        }
        push(&mut s.gamma_interior, x, [0.0, 0.0]);
        push(&mut s.reference_interior, x, [0.0, 0.0]);
    }
    Ok(s)
}

/// Polar cap angle of `domain ∩ {|xi| = r}` and whether the opposite cap
/// is present as well.
pub(crate) fn cap_at(domain: &DomainSpec, r: f64) -> Result<(f64, bool)> {
    match domain.spherical_section(r) {
        SphericalSection::Cap { angle, mirrored } => Ok((angle, mirrored)),
        SphericalSection::Full => Ok((PI, false)),
        SphericalSection::Other => Err(Error::Unsupported("spherical sections that are not polar caps".into())),
    }
}

/// Angle of the limiting cone: the cone itself, or the degenerate ray for
/// families whose spherical sections shrink.
fn limiting_angle(domain: &DomainSpec) -> f64 {
    if domain.kind == DomainKind::LipschitzCone {
        domain.cap_angle
    } else {
        0.0
    }
}

pub(crate) fn cone_window_radii(window: ConeWindow, n: usize) -> Vec<f64> {
    (0..n).map(|i| window.r_min + (window.r_max - window.r_min) * i as f64 / (n - 1) as f64).collect()
}

/// Clouds of `Gamma_t = Omega~_t / t` and of the limiting cone on a shell.
pub fn rescale_conelike(domain: &DomainSpec, t: f64, window: ConeWindow, n_samples: usize) -> Result<RescaledSample> {
    rescale_conelike_against(domain, t, window, n_samples, limiting_angle(domain))
}

/// As [`rescale_conelike`], with the reference cone given by its half-angle.
pub(crate) fn rescale_conelike_against(
    domain: &DomainSpec,
    t: f64,
    window: ConeWindow,
    n_samples: usize,
    reference_angle: f64,
) -> Result<RescaledSample> {
    domain.validate()?;
    if !(t > 0.0) || !(window.r_min > 0.0 && window.r_min < window.r_max) {
        return Err(Error::InvalidArgument("need t > 0 and 0 < r_min < r_max".into()));
    }
    if window.r_max > t {
        return Err(Error::WindowTooLarge(format!("shell radius {} exceeds t = {t}", window.r_max)));
    }
    // The straight cylinder collapses onto the whole axis line.
    let two_sided = domain.kind == DomainKind::StraightCylinder;
    let per_r = 1 + RING_FRACTIONS.len() * ANGLES;
    let nr = (n_samples / per_r).max(8);
    let mut s = RescaledSample {
        t,
        gamma_boundary: Vec::new(),
        gamma_interior: Vec::new(),
        reference_boundary: Vec::new(),
        reference_interior: Vec::new(),
    };
    let point = |r: f64, polar: f64, azimuth: f64, flip: bool| -> Point3 {
        let axial = if flip { -r * polar.cos() } else { r * polar.cos() };
        let y = [r * polar.sin() * azimuth.cos(), r * polar.sin() * azimuth.sin()];
        domain.join(axial, y)
    };
    for r in cone_window_radii(window, nr) {
        let (angle, mirrored) = cap_at(domain, t * r)?;
        for &flip in if mirrored { &[false, true][..] } else { &[false][..] } {
            s.gamma_interior.push(point(r, 0.0, 0.0, flip));
            for k in 0..ANGLES {
                let az = TAU * k as f64 / ANGLES as f64;
                s.gamma_boundary.push(point(r, angle, az, flip));
                for &f in &RING_FRACTIONS[1..] {
                    s.gamma_interior.push(point(r, f * angle, az, flip));
                }
            }
        }
        for &flip in if two_sided { &[false, true][..] } else { &[false][..] } {
            s.reference_interior.push(point(r, 0.0, 0.0, flip));
            for k in 0..ANGLES {
                let az = TAU * k as f64 / ANGLES as f64;
                s.reference_boundary.push(point(r, reference_angle, az, flip));
                for &f in &RING_FRACTIONS[1..] {
                    s.reference_interior.push(point(r, f * reference_angle, az, flip));
                }
            }
        }
    }
    Ok(s)
}
