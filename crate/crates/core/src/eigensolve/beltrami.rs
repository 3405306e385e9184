use std::f64::consts::{FRAC_PI_2, PI};

use super::{characteristic_constant, dirichlet_lambda1_weighted, CharacteristicConstant, DirichletOptions, EigenResult};
use crate::geometry::{DomainSpec, SectionMask, SphericalSection};
use crate::special::legendre_p;
use crate::{Error, Result};

/// Largest shooting step in `x = cos(polar angle)`.
const MAX_STEP: f64 = 1e-4;
/// Launch offset from the regular singular point `x = 1`.
const LAUNCH: f64 = 1e-8;

struct Shot {
    /// `psi` stayed positive on the whole cap.
    positive: bool,
    /// `(1 - x, psi)` along the trajectory.
    path: Vec<(f64, f64)>,
}

/// Integrates `(1 - x^2) psi'' - 2 x psi' + lambda psi = 0` from the pole to
/// the cap edge with classical RK4.
///
/// The independent variable is `u = 1 - x`, which keeps `1 - x^2 = u (2 - u)`
/// free of cancellation near the pole. Steps grow geometrically away from
/// the singular point and are capped at `MAX_STEP`.
fn shoot(lambda: f64, u_end: f64, min_steps: usize, record: bool) -> Shot {
    let nu = 0.5 * (-1.0 + (1.0 + 4.0 * lambda).sqrt());
    let u0 = LAUNCH.min(1e-3 * u_end);
    // Regular solution at the pole from the hypergeometric series.
    let (p, dp_dx) = legendre_p(nu, 1.0 - u0);
    let mut psi = p;
    let mut dpsi = -dp_dx;
    let mut u = u0;
    let h_max = MAX_STEP.min(u_end / min_steps as f64);
    let rhs = |u: f64, psi: f64, dpsi: f64| -> (f64, f64) {
        (dpsi, -(2.0 * (1.0 - u) * dpsi + lambda * psi) / (u * (2.0 - u)))
    };
    let mut path = Vec::new();
    if record {
        path.push((0.0, 1.0));
        path.push((u, psi));
    }
    while u < u_end {
        let h = (0.25 * u).min(h_max).min(u_end - u);
        let (k1a, k1b) = rhs(u, psi, dpsi);
        let (k2a, k2b) = rhs(u + 0.5 * h, psi + 0.5 * h * k1a, dpsi + 0.5 * h * k1b);
        let (k3a, k3b) = rhs(u + 0.5 * h, psi + 0.5 * h * k2a, dpsi + 0.5 * h * k2b);
        let (k4a, k4b) = rhs(u + h, psi + h * k3a, dpsi + h * k3b);
        psi += h / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
        dpsi += h / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
        u += h;
        if record {
            path.push((u, psi));
        }
        if psi <= 0.0 {
            return Shot { positive: false, path };
        }
    }
    Shot { positive: true, path }
}

/// Principal Dirichlet eigenvalue of the Laplace–Beltrami operator on the
/// geodesic cap of half-angle `cap_angle` on `S^2`, by Legendre shooting and
/// bisection on `lambda`.
///
/// The returned eigenfunction holds `n_grid` samples of `psi` at equally
/// spaced polar angles in `[0, cap_angle]`.
pub fn beltrami_lambda1(cap_angle: f64, n_grid: usize) -> Result<EigenResult> {
    if !(cap_angle > 0.0 && cap_angle < PI) {
        return Err(Error::InvalidCap(cap_angle));
    }
    let n_grid = n_grid.max(2);
    let u_end = 2.0 * (0.5 * cap_angle).sin().powi(2);
    let min_steps = n_grid.max(2000);

    let mut lo = 0.0;
    let mut hi = (2.0 * 5.783_185_962_946_784 / (cap_angle * cap_angle)).max(1.0);
    while shoot(hi, u_end, min_steps, false).positive {
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > 1e-14 * hi {
        let mid = 0.5 * (lo + hi);
        if shoot(mid, u_end, min_steps, false).positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lambda = 0.5 * (lo + hi);
    let shot = shoot(lo, u_end, min_steps, true);
    let path = shot.path;
    let end_value = path.last().map(|p| p.1).unwrap_or(0.0);
    let peak = path.iter().fold(0.0f64, |m, p| m.max(p.1));

    let mut coords = Vec::with_capacity(n_grid);
    let mut eigenfunction = Vec::with_capacity(n_grid);
    let mut seg = 0;
    for k in 0..n_grid {
        // Keep the last sample just inside the cap so all samples are positive.
        let theta = cap_angle * k as f64 / (n_grid - 1) as f64 * (1.0 - 1e-9);
        let u = 2.0 * (0.5 * theta).sin().powi(2);
        while seg + 2 < path.len() && path[seg + 1].0 < u {
            seg += 1;
        }
        let (u0, p0) = path[seg];
        let (u1, p1) = path[seg + 1];
        let s = ((u - u0) / (u1 - u0)).clamp(0.0, 1.0);
        coords.push([theta, 0.0]);
        eigenfunction.push((p0 + s * (p1 - p0)) / peak);
    }
    Ok(EigenResult {
        lambda,
        eigenfunction,
        coords,
        residual: end_value.abs() / peak,
        h: cap_angle / (n_grid - 1) as f64,
    })
}

/// Conformal weight `4 / (1 + |w|^2)^2` of the stereographic chart.
pub fn stereographic_weight(w: [f64; 2]) -> f64 {
    let q = 1.0 + w[0] * w[0] + w[1] * w[1];
    4.0 / (q * q)
}

/// Unit-sphere point (axial component last) for a stereographic coordinate.
fn sphere_point(w: [f64; 2]) -> ([f64; 2], f64) {
    let q = w[0] * w[0] + w[1] * w[1];
    let d = 1.0 + q;
    ([2.0 * w[0] / d, 2.0 * w[1] / d], (1.0 - q) / d)
}

/// Finite-difference Laplace–Beltrami eigenvalue on a spherical region
/// given by `inside(transverse, axial)` on the unit sphere.
///
/// The region is mapped to the plane by stereographic projection from the
/// antipodal pole, where the problem becomes
/// `-Delta psi = lambda 4 / (1 + |w|^2)^2 psi`; `bound_angle` must bound the
/// polar angle of the region and `h` is the planar grid spacing.
pub fn beltrami_lambda1_fd<F>(inside: F, bound_angle: f64, h: f64) -> Result<EigenResult>
where
    F: Fn([f64; 2], f64) -> bool,
{
    if !(bound_angle > 0.0 && bound_angle < PI) {
        return Err(Error::InvalidCap(bound_angle));
    }
    let radius = (0.5 * bound_angle).tan();
    let mask = SectionMask::from_predicate([radius, radius], h, radius, |w| {
        let (y, z) = sphere_point(w);
        inside(y, z)
    })?;
    dirichlet_lambda1_weighted(&mask, Some(&stereographic_weight), DirichletOptions::default())
}

/// Characteristic constant of `domain ∩ {|xi| = r}`.
///
/// Polar caps use the shooting solver; other sections use the stereographic
/// finite-difference solver with `fd_cells` grid cells across the bounding
/// cap radius. Returns `None` when the section is the whole sphere (the
/// constant degenerates to zero).
pub fn spherical_section_alpha(domain: &DomainSpec, r: f64, fd_cells: usize) -> Result<Option<CharacteristicConstant>> {
    let lambda = match domain.spherical_section(r) {
        SphericalSection::Full => return Ok(None),
        SphericalSection::Cap { angle, .. } => beltrami_lambda1(angle, 64)?.lambda,
        SphericalSection::Other => {
            // The circular paraboloid of the same profile encloses the
            // elliptic one, so its cap bounds the section.
            let circ = DomainSpec { ellipse_b: 1.0, ..*domain };
            let bound = match circ.spherical_section(r) {
                SphericalSection::Cap { angle, .. } => angle.min(FRAC_PI_2) * 1.05,
                _ => FRAC_PI_2,
            };
            let h = (0.5 * bound).tan() / fd_cells.max(8) as f64;
            let d = *domain;
            beltrami_lambda1_fd(move |y, z| d.contains(d.join(r * z, [r * y[0], r * y[1]])), bound, h)?.lambda
        }
    };
    characteristic_constant(lambda, domain.dim).map(Some)
}
