//! Walk-on-spheres estimation of the harmonic measure of the spherical cut
//! `S_r = Omega ∩ {|xi| = r}` seen from a point, and the check of the
//! reciprocal bound `omega_{x0}(r) >= 1 / M~(r)`.

use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::UnitSphere;
use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics::hm_lower_bound;
use crate::geometry::{DomainKind, DomainSpec, Point3};
use crate::pde::{cone_exact, cylinder_exact, solve_harmonic, CapMode, DiskMode, InletCap, OutletCap};
use crate::{Error, Result};

/// Maximum number of steps of a single path.
pub const MAX_STEPS: usize = 1_000_000;

fn norm(p: Point3) -> f64 {
    (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()
}

/// Lower bound on the distance from an interior point to the boundary.
///
/// Exact for cones and the straight cylinder. For the other rotational
/// families the meridian profile is searched by branch and bound over
/// bounding boxes of profile pieces, starting from 64 samples; the result
/// is within `1e-4` (relative) of the true distance and never above it.
pub fn distance_to_boundary(domain: &DomainSpec, x: Point3) -> Result<f64> {
    if !domain.contains(x) {
        return Err(Error::OutsideDomain);
    }
    let (axial, y) = domain.split(x);
    let rho = y[0].hypot(y[1]);
    match domain.kind {
        DomainKind::LipschitzCone => {
            let r = norm(x);
            let gap = domain.cap_angle - (axial / r).clamp(-1.0, 1.0).acos();
            Ok(if gap <= FRAC_PI_2 { r * gap.sin() } else { r })
        }
        DomainKind::StraightCylinder => Ok(domain.scale - rho),
        _ if domain.is_rotational() => Ok(profile_distance(domain, axial, rho)),
        k => Err(Error::Unsupported(format!("distance queries for {k:?} with non-circular sections"))),
    }
}

/// Distance from `(x, rho)` to the meridian curve `rho = a(s)`, `s >= 0`,
/// and to the base disk `{s = 0, rho <= a(0)}`.
fn profile_distance(domain: &DomainSpec, x: f64, rho: f64) -> f64 {
    let a = |s: f64| domain.profile(s).unwrap_or(0.0);
    let a0 = a(0.0);
    let base = x.hypot((rho - a0).max(0.0));
    // The point (x, a(x)) bounds the distance from above.
    let reach = (a(x) - rho).min(base);
    let (lo, hi) = ((x - reach).max(0.0), x + reach);
    let d = |s: f64, v: f64| (x - s).hypot(rho - v);
    // Profiles are nondecreasing, so a piece over [sa, sb] lies in the
    // box [sa, sb] x [a(sa), a(sb)].
    let box_bound = |sa: f64, sb: f64, va: f64, vb: f64| {
        let dx = (sa - x).max(x - sb).max(0.0);
        let dr = (va - rho).max(rho - vb).max(0.0);
        dx.hypot(dr)
    };
    let n = 64;
    let s: Vec<f64> = (0..=n).map(|k| lo + (hi - lo) * k as f64 / n as f64).collect();
    let v: Vec<f64> = s.iter().map(|&t| a(t)).collect();
    let mut upper = base;
    for k in 0..=n {
        upper = upper.min(d(s[k], v[k]));
    }
    let tol = 1e-4 * upper;
    let mut lower = upper;
    let mut stack: Vec<(f64, f64, f64, f64)> = (0..n).map(|k| (s[k], s[k + 1], v[k], v[k + 1])).collect();
    while let Some((sa, sb, va, vb)) = stack.pop() {
        let lb = box_bound(sa, sb, va, vb);
        if lb >= upper - tol {
            lower = lower.min(lb);
            continue;
        }
        if sb - sa < 1e-15 * (1.0 + sb) {
            lower = lower.min(lb);
            continue;
        }
        let sm = 0.5 * (sa + sb);
        let vm = a(sm);
        upper = upper.min(d(sm, vm));
        stack.push((sa, sm, va, vm));
        stack.push((sm, sb, vm, vb));
    }
    lower.min(upper)
}

/// Region explored by a walk: a parametric domain or one of the controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WosRegion {
    Domain(DomainSpec),
    /// No lateral boundary; every path reaches the cut sphere.
    WholeSpace,
    /// `{|xi| > radius}`: with the cut this is a spherical annulus.
    OutsideBall { radius: f64 },
}

impl WosRegion {
    fn lateral_distance(&self, p: Point3) -> Result<f64> {
        match self {
            WosRegion::Domain(d) => distance_to_boundary(d, p).or_else(|e| match e {
                // Points that left the domain by rounding are on the boundary.
                Error::OutsideDomain => Ok(0.0),
                e => Err(e),
            }),
            WosRegion::WholeSpace => Ok(f64::INFINITY),
            WosRegion::OutsideBall { radius } => Ok((norm(p) - radius).max(0.0)),
        }
    }

    fn check_start(&self, p: Point3) -> Result<()> {
        let ok = match self {
            WosRegion::Domain(d) => d.contains(p),
            WosRegion::WholeSpace => true,
            WosRegion::OutsideBall { radius } => norm(p) > *radius,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::OutsideDomain)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WosOptions {
    pub max_steps: usize,
    /// Fail with `PathBudgetExceeded` instead of counting capped paths as
    /// lateral exits.
    pub strict: bool,
}

impl Default for WosOptions {
    fn default() -> Self {
        Self { max_steps: MAX_STEPS, strict: false }
    }
}

/// Monte Carlo estimate of the harmonic measure of the cut sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WosEstimate {
    pub p_hat: f64,
    pub stderr: f64,
    pub n_paths: usize,
    pub mean_steps: f64,
    pub seed: u64,
    /// Paths stopped by the step budget (counted as lateral exits).
    pub capped: usize,
}

/// Fraction of walk-on-spheres paths from `x0` that come within `eps_shell`
/// of the cut sphere `|xi| = r_cut` before coming within `eps_shell` of the
/// lateral boundary.
pub fn wos_exit_probability(
    domain: &DomainSpec,
    x0: Point3,
    r_cut: f64,
    n_paths: usize,
    eps_shell: f64,
    seed: u64,
) -> Result<WosEstimate> {
    wos_exit_probability_in(&WosRegion::Domain(*domain), x0, r_cut, n_paths, eps_shell, seed, WosOptions::default())
}

/// [`wos_exit_probability`] on any [`WosRegion`].
pub fn wos_exit_probability_in(
    region: &WosRegion,
    x0: Point3,
    r_cut: f64,
    n_paths: usize,
    eps_shell: f64,
    seed: u64,
    opts: WosOptions,
) -> Result<WosEstimate> {
    if let WosRegion::Domain(d) = region {
        d.validate()?;
    }
    region.check_start(x0)?;
    if !(norm(x0) < r_cut) {
        return Err(Error::InvalidArgument(format!("start point must lie inside the cut sphere of radius {r_cut}")));
    }
    if !(eps_shell > 0.0) || n_paths == 0 {
        return Err(Error::InvalidArgument("need eps_shell > 0 and at least one path".into()));
    }
    // Counts only, so the reduction is exact in any order.
    let (hits, steps, capped) = (0..n_paths)
        .into_par_iter()
        .map(|i| walk(region, x0, r_cut, eps_shell, seed, i as u64, opts.max_steps))
        .try_reduce(|| (0u64, 0u64, 0u64), |a, b| Ok((a.0 + b.0, a.1 + b.1, a.2 + b.2)))?;
    if opts.strict && capped > 0 {
        return Err(Error::PathBudgetExceeded(opts.max_steps));
    }
    let n = n_paths as f64;
    let p_hat = hits as f64 / n;
    Ok(WosEstimate {
        p_hat,
        stderr: (p_hat * (1.0 - p_hat) / n).sqrt(),
        n_paths,
        mean_steps: steps as f64 / n,
        seed,
        capped: capped as usize,
    })
}

/// One path on its own ChaCha stream; returns `(hit, steps, capped)`.
fn walk(region: &WosRegion, x0: Point3, r_cut: f64, eps: f64, seed: u64, stream: u64, max_steps: usize) -> Result<(u64, u64, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut p = x0;
    for step in 0..max_steps {
        let d_cut = r_cut - norm(p);
        let d_lat = region.lateral_distance(p)?;
        if d_cut.min(d_lat) <= eps {
            return Ok((u64::from(d_cut <= d_lat), step as u64, 0));
        }
        let r = d_cut.min(d_lat);
        let dir: [f64; 3] = rng.sample(UnitSphere);
        p = [p[0] + r * dir[0], p[1] + r * dir[1], p[2] + r * dir[2]];
    }
    Ok((0, max_steps as u64, 1))
}

/// Outcome of the reciprocal-bound check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReciprocalBoundReport {
    pub p_hat: f64,
    pub stderr: f64,
    pub n_paths: usize,
    /// `1 / M~(r)`.
    pub bound: f64,
    pub pass: bool,
    pub seed: u64,
    pub mean_steps: f64,
}

impl ReciprocalBoundReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Checks `p_hat + 3 stderr >= 1 / m_tilde` with `eps_shell = 1e-3 r_cut`.
pub fn verify_reciprocal_bound(
    domain: &DomainSpec,
    x0: Point3,
    r_cut: f64,
    m_tilde: f64,
    n_paths: usize,
    seed: u64,
) -> Result<ReciprocalBoundReport> {
    let bound = hm_lower_bound(m_tilde)?;
    let est = wos_exit_probability(domain, x0, r_cut, n_paths, 1e-3 * r_cut, seed)?;
    Ok(ReciprocalBoundReport {
        p_hat: est.p_hat,
        stderr: est.stderr,
        n_paths,
        bound,
        pass: est.p_hat + 3.0 * est.stderr >= bound,
        seed,
        mean_steps: est.mean_steps,
    })
}

/// `M~(r_cut)` of a positive harmonic function vanishing on the boundary,
/// normalized so that `u(x0) = 1`.
///
/// Cones and the straight cylinder use their separable solutions. Other
/// domains use a truncated PDE solve (caps Zero/One) reaching to
/// `4 r_cut` as a stand-in for the unbounded solution.
pub fn reference_m_tilde(domain: &DomainSpec, x0: Point3, r_cut: f64, pde_h: f64) -> Result<f64> {
    domain.validate()?;
    if !domain.contains(x0) {
        return Err(Error::OutsideDomain);
    }
    match domain.kind {
        DomainKind::LipschitzCone => {
            let c = CapMode::new(domain.cap_angle)?;
            let r0 = norm(x0);
            let u0 = cone_exact(r0, [x0[0] / r0, x0[1] / r0, x0[2] / r0], c.alpha0, |w| c.psi(w))?;
            Ok(r_cut.powf(c.alpha0) / u0)
        }
        DomainKind::StraightCylinder => {
            let m = DiskMode::new(domain.scale);
            let (x, y) = domain.split(x0);
            let u0 = cylinder_exact(x, y, m.lambda, |y| m.psi(y))?;
            let n = 4000;
            let best = (0..=n)
                .map(|k| {
                    let rho = domain.scale.min(r_cut) * k as f64 / n as f64;
                    let x = (r_cut * r_cut - rho * rho).max(0.0).sqrt();
                    cylinder_exact(x, [rho, 0.0], m.lambda, |y| m.psi(y)).unwrap_or(0.0)
                })
                .fold(0.0, f64::max);
            Ok(best / u0)
        }
        _ => {
            let (axial, _) = domain.split(x0);
            let t_lo = 0.5 * axial;
            let a_lo = domain.profile(t_lo).ok_or(Error::OutsideDomain)?;
            let h = pde_h.min(a_lo / 3.0);
            let field = solve_harmonic(domain, t_lo, 4.0 * r_cut, h, InletCap::Zero, OutletCap::One)?;
            let u0 = field.value_at(x0).ok_or(Error::OutOfWindow(axial))?;
            if !(u0 > 0.0) {
                return Err(Error::SolverDivergence("field underflows at the base point".into()));
            }
            Ok(field.max_on_sphere(r_cut)? / u0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_distances() {
        let c = DomainSpec::straight_cylinder(1.0);
        assert_eq!(distance_to_boundary(&c, [3.0, 0.0, 0.0]).unwrap(), 1.0);
        let h = DomainSpec::cone(FRAC_PI_2);
        assert!((distance_to_boundary(&h, [0.0, 0.0, 2.5]).unwrap() - 2.5).abs() < 1e-15);
        assert!((distance_to_boundary(&h, [1.0, 4.0, 2.5]).unwrap() - 2.5).abs() < 1e-12);
        assert!(matches!(distance_to_boundary(&h, [0.0, 0.0, -1.0]), Err(Error::OutsideDomain)));
    }

    #[test]
    fn paraboloid_distance_on_axis() {
        // Closest point to (4, 0) on rho = sqrt(s): minimise (4-s)^2 + s,
        // so s = 3.5 and the distance is sqrt(3.75).
        let p = DomainSpec::paraboloid(1.0, 0.5);
        let d = distance_to_boundary(&p, [4.0, 0.0, 0.0]).unwrap();
        assert!(d <= 3.75f64.sqrt() && d > 3.75f64.sqrt() * (1.0 - 1e-4), "{d}");
    }

    #[test]
    fn horn_base_counts() {
        let h = DomainSpec::horn(1.0);
        let d = distance_to_boundary(&h, [0.1, 0.0, 0.0]).unwrap();
        assert!((d - 0.1).abs() < 1e-9);
    }

    #[test]
    fn whole_space_always_hits() {
        let e = wos_exit_probability_in(&WosRegion::WholeSpace, [0.0; 3], 1.0, 500, 1e-3, 1, WosOptions::default()).unwrap();
        assert_eq!(e.p_hat, 1.0);
        assert_eq!(e.stderr, 0.0);
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let d = DomainSpec::cone(FRAC_PI_2);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| wos_exit_probability(&d, [0.0, 0.0, 1.0], 8.0, 2000, 8e-3, 42).unwrap())
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn half_space_reference_is_r() {
        let d = DomainSpec::cone(FRAC_PI_2);
        let m = reference_m_tilde(&d, [0.0, 0.0, 1.0], 8.0, 0.1).unwrap();
        assert!((m - 8.0).abs() < 1e-4, "{m}");
    }

    #[test]
    fn strict_budget() {
        let opts = WosOptions { max_steps: 2, strict: true };
        let r = wos_exit_probability_in(&WosRegion::OutsideBall { radius: 1.0 }, [0.0, 0.0, 2.0], 4.0, 100, 1e-6, 3, opts);
        assert!(matches!(r, Err(Error::PathBudgetExceeded(2))));
    }
}
