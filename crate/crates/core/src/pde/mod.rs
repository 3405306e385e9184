//! Finite-difference Laplace solvers on truncated domains and the
//! separable solutions in cylinders and cones used as exact oracles.
//!
//! Three grids are available. Rotationally invariant cylinder-like domains
//! are solved on the `(x, rho)` half-plane, cones on the `(ln r, theta)`
//! half-plane, and other sections on a full 3D lattice. All use
//! symmetric finite-volume weights and stair-step lateral boundaries.

mod exact;
mod lattice;
mod planes;

use std::f64::consts::PI;
use std::io::Write;

use serde::{Deserialize, Serialize};

pub use exact::{cone_exact, cylinder_exact, CapMode, DiskMode};

use crate::asymptotics::{GrowthCurve, Provenance};
use crate::geometry::{DomainKind, DomainSpec, Point3};
use crate::linalg::{norm2, pcg, SpdOperator};
use crate::{Error, Result};
use planes::PlaneSystem;

/// Condition on the inner cap `{x = t_min}` (or `{|xi| = t_min}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InletCap {
    Zero,
    Exact,
}

/// Condition on the outer cap `{x = t_max}` (or `{|xi| = t_max}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutletCap {
    One,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolverKind {
    /// Block-tridiagonal elimination (half-plane grids only).
    Direct,
    /// Jacobi-preconditioned conjugate gradients.
    ConjugateGradient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GridChoice {
    /// Spherical grid for cones, axisymmetric grid for circular sections,
    /// 3D lattice otherwise.
    Auto,
    Axisymmetric,
    Lattice,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub solver: SolverKind,
    pub grid: GridChoice,
    pub cg_tol: f64,
    pub max_iter: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { solver: SolverKind::Direct, grid: GridChoice::Auto, cg_tol: 1e-10, max_iter: 500_000 }
    }
}

/// Node layout of a [`HarmonicField`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Grid {
    /// Nodes `(x0 + i h, j h)` for `i <= nx`, `j < nr`.
    Axisymmetric { x0: f64, h: f64, nx: usize, nr: usize },
    /// Nodes `(r, theta) = (exp(s0 + k ds), j dtheta)` for `k <= ns`,
    /// `j <= ntheta`; `theta = ntheta dtheta` is the cone boundary.
    Spherical { s0: f64, ds: f64, ns: usize, dtheta: f64, ntheta: usize },
    /// Nodes `(x0 + i h, (j - c) h, (k - c') h)` with the transverse grid
    /// centred on the axis.
    Lattice { x0: f64, h: f64, nx: usize, ny: usize, nz: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NodeKind {
    /// Outside the domain or on its lateral boundary; value 0.
    Exterior,
    Interior,
    Cap,
}

/// Discrete solution of the Laplace equation on a truncated domain.
#[derive(Debug, Clone)]
pub struct HarmonicField {
    pub domain: DomainSpec,
    pub grid: Grid,
    pub t_min: f64,
    pub t_max: f64,
    pub inlet: InletCap,
    pub outlet: OutletCap,
    pub values: Vec<f64>,
    pub kinds: Vec<NodeKind>,
    /// Relative l2 residual of the discrete equations at interior nodes.
    pub residual: f64,
    /// Whether interior values lie within the range of the boundary data.
    pub max_principle_ok: bool,
}

/// Solves `Δu = 0` with `u = 0` on the lateral boundary and the given cap
/// conditions, with default options.
pub fn solve_harmonic(
    domain: &DomainSpec,
    t_min: f64,
    t_max: f64,
    h: f64,
    inlet: InletCap,
    outlet: OutletCap,
) -> Result<HarmonicField> {
    solve_harmonic_with(domain, t_min, t_max, h, inlet, outlet, SolveOptions::default())
}

/// [`solve_harmonic`] with explicit grid and solver choice. For cones the
/// window is radial and `h` is the spacing in both `ln r` and `theta`.
pub fn solve_harmonic_with(
    domain: &DomainSpec,
    t_min: f64,
    t_max: f64,
    h: f64,
    inlet: InletCap,
    outlet: OutletCap,
    opts: SolveOptions,
) -> Result<HarmonicField> {
    domain.validate()?;
    if !(t_min < t_max) || !(h > 0.0) || !t_min.is_finite() || !t_max.is_finite() {
        return Err(Error::InvalidArgument(format!("need t_min < t_max and h > 0, got [{t_min}, {t_max}], h = {h}")));
    }
    if domain.dim != 3 {
        return Err(Error::Unsupported("PDE solves are three-dimensional".into()));
    }
    if domain.is_cone() {
        if opts.grid == GridChoice::Lattice {
            return Err(Error::Unsupported("cones are solved on the spherical grid".into()));
        }
        if !(t_min > 0.0) {
            return Err(Error::InvalidArgument("cone window needs t_min > 0".into()));
        }
        return solve_spherical(domain, t_min, t_max, h, inlet, outlet, opts);
    }
    if domain.kind != DomainKind::StraightCylinder && !(t_min > 0.0) {
        return Err(Error::InvalidArgument("window must start at a positive height".into()));
    }
    let lattice = match opts.grid {
        GridChoice::Lattice => true,
        GridChoice::Axisymmetric if !domain.is_rotational() => {
            return Err(Error::Unsupported("axisymmetric reduction needs circular sections".into()))
        }
        GridChoice::Axisymmetric => false,
        GridChoice::Auto => !domain.is_rotational(),
    };
    if lattice {
        lattice::solve(domain, t_min, t_max, h, inlet, outlet, opts)
    } else {
        solve_axisymmetric(domain, t_min, t_max, h, inlet, outlet, opts)
    }
}

/// Exact boundary data of a domain with a separable solution.
pub(crate) enum ExactData {
    Cylinder(DiskMode),
    Cone(CapMode),
}

impl ExactData {
    pub fn for_domain(domain: &DomainSpec) -> Result<Self> {
        match domain.kind {
            DomainKind::StraightCylinder => Ok(Self::Cylinder(DiskMode::new(domain.scale))),
            DomainKind::LipschitzCone => Ok(Self::Cone(CapMode::new(domain.cap_angle)?)),
            k => Err(Error::Unsupported(format!("no exact cap data for {k:?}"))),
        }
    }

    pub fn value(&self, p: Point3) -> f64 {
        match self {
            Self::Cylinder(m) => cylinder_exact(p[0], [p[1], p[2]], m.lambda, |y| m.psi(y)).unwrap_or(0.0),
            Self::Cone(c) => {
                let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
                cone_exact(r, [p[0] / r, p[1] / r, p[2] / r], c.alpha0, |w| c.psi(w)).unwrap_or(0.0)
            }
        }
    }
}

pub(crate) fn cap_values(
    domain: &DomainSpec,
    inlet: InletCap,
    outlet: OutletCap,
) -> Result<(Option<ExactData>, impl Fn(bool, Point3, &Option<ExactData>) -> f64)> {
    let exact = if inlet == InletCap::Exact || outlet == OutletCap::Exact { Some(ExactData::for_domain(domain)?) } else { None };
    let f = move |outer: bool, p: Point3, ex: &Option<ExactData>| -> f64 {
        let use_exact = if outer { outlet == OutletCap::Exact } else { inlet == InletCap::Exact };
        match (use_exact, ex) {
            (true, Some(e)) => e.value(p),
            _ if outer => 1.0,
            _ => 0.0,
        }
    };
    Ok((exact, f))
}

fn solve_planes(sys: &PlaneSystem, b: &[f64], opts: SolveOptions) -> Result<(Vec<f64>, f64)> {
    let u = match opts.solver {
        SolverKind::Direct => sys.solve_direct(b)?,
        SolverKind::ConjugateGradient => {
            let mut x = vec![0.0; sys.len()];
            pcg(sys, b, &mut x, opts.cg_tol, 0.0, opts.max_iter)?;
            x
        }
    };
    Ok((u.clone(), relative_residual(sys, &u, b)))
}

pub(crate) fn relative_residual<A: SpdOperator + ?Sized>(op: &A, u: &[f64], b: &[f64]) -> f64 {
    let mut r = vec![0.0; u.len()];
    op.apply(u, &mut r);
    for (r, b) in r.iter_mut().zip(b) {
        *r = b - *r;
    }
    let nb = norm2(b);
    if nb == 0.0 {
        norm2(&r)
    } else {
        norm2(&r) / nb
    }
}

fn check_thickness(across: usize, where_: f64) -> Result<()> {
    if across < 4 {
        return Err(Error::MaskDegenerate(format!(
            "section at {where_} is {across} cells across; at least 4 are needed"
        )));
    }
    Ok(())
}

fn solve_axisymmetric(
    domain: &DomainSpec,
    t_min: f64,
    t_max: f64,
    h_req: f64,
    inlet: InletCap,
    outlet: OutletCap,
    opts: SolveOptions,
) -> Result<HarmonicField> {
    let nx = ((t_max - t_min) / h_req).round().max(2.0) as usize;
    let h = (t_max - t_min) / nx as f64;
    let radius = |i: usize| domain.profile(t_min + i as f64 * h).unwrap_or(0.0);
    let a_max = (0..=nx).map(radius).fold(0.0, f64::max);
    let nr = (a_max / h).ceil() as usize + 2;
    // Radial nodes strictly inside the section at plane i.
    let count = |i: usize| {
        let a = radius(i);
        (0..nr).take_while(|&j| (j as f64) * h < a * (1.0 - 1e-12)).count()
    };
    let counts: Vec<usize> = (0..=nx).map(count).collect();
    for i in 1..nx {
        check_thickness(2 * counts[i] - counts[i].min(1), t_min + i as f64 * h)?;
    }
    let (exact, capf) = cap_values(domain, inlet, outlet)?;
    let mut values = vec![0.0; (nx + 1) * nr];
    let mut kinds = vec![NodeKind::Exterior; (nx + 1) * nr];
    for (i, outer) in [(0, false), (nx, true)] {
        for j in 0..counts[i] {
            let x = t_min + i as f64 * h;
            values[i * nr + j] = capf(outer, domain.join(x, [j as f64 * h, 0.0]), &exact);
            kinds[i * nr + j] = NodeKind::Cap;
        }
    }
    let sys_sizes: Vec<usize> = counts[1..nx].to_vec();
    let mut sys = PlaneSystem::new(sys_sizes);
    let mut b = vec![0.0; sys.len()];
    let wx = |j: usize| if j == 0 { h / 8.0 } else { j as f64 * h };
    for i in 1..nx {
        let p = i - 1;
        let m = counts[i];
        for j in 0..m {
            let k = sys.index(p, j);
            kinds[i * nr + j] = NodeKind::Interior;
            for (ni, fwd) in [(i - 1, false), (i + 1, true)] {
                let w = wx(j);
                sys.diag[k] += w;
                if j < counts[ni] {
                    if ni == 0 || ni == nx {
                        b[k] += w * values[ni * nr + j];
                    } else if fwd {
                        sys.up[k] = w;
                    }
                }
            }
            let w_out = (j as f64 + 0.5) * h;
            sys.diag[k] += w_out;
            if j + 1 < m {
                sys.off[k] = w_out;
            }
            if j > 0 {
                sys.diag[k] += (j as f64 - 0.5) * h;
            }
        }
    }
    let (u, residual) = solve_planes(&sys, &b, opts)?;
    for i in 1..nx {
        for j in 0..counts[i] {
            values[i * nr + j] = u[sys.index(i - 1, j)];
        }
    }
    Ok(HarmonicField::finish(domain, Grid::Axisymmetric { x0: t_min, h, nx, nr }, t_min, t_max, inlet, outlet, values, kinds, residual))
}

fn solve_spherical(
    domain: &DomainSpec,
    r_min: f64,
    r_max: f64,
    h: f64,
    inlet: InletCap,
    outlet: OutletCap,
    opts: SolveOptions,
) -> Result<HarmonicField> {
    let cap = domain.cap_angle;
    let ntheta = (cap / h).round().max(1.0) as usize;
    let dtheta = cap / ntheta as f64;
    check_thickness(2 * ntheta - 1, r_min)?;
    let (s0, s1) = (r_min.ln(), r_max.ln());
    let ns = ((s1 - s0) / h).round().max(2.0) as usize;
    let ds = (s1 - s0) / ns as f64;
    let stride = ntheta + 1;
    let (exact, capf) = cap_values(domain, inlet, outlet)?;
    let mut values = vec![0.0; (ns + 1) * stride];
    let mut kinds = vec![NodeKind::Exterior; (ns + 1) * stride];
    for (k, outer) in [(0, false), (ns, true)] {
        let r = (s0 + k as f64 * ds).exp();
        for j in 0..ntheta {
            let th = j as f64 * dtheta;
            values[k * stride + j] = capf(outer, [r * th.sin(), 0.0, r * th.cos()], &exact);
            kinds[k * stride + j] = NodeKind::Cap;
        }
    }
    // Polar cell weights: integral of sin over the cell divided by dtheta.
    let wtheta: Vec<f64> = (0..ntheta)
        .map(|j| {
            let th = j as f64 * dtheta;
            let lo = (th - 0.5 * dtheta).max(0.0);
            ((lo).cos() - (th + 0.5 * dtheta).cos()) / dtheta
        })
        .collect();
    let mut sys = PlaneSystem::new(vec![ntheta; ns - 1]);
    let mut b = vec![0.0; sys.len()];
    for kk in 1..ns {
        let p = kk - 1;
        let s = s0 + kk as f64 * ds;
        let wr = ((s + 0.5 * ds).exp() - (s - 0.5 * ds).exp()) / ds;
        for j in 0..ntheta {
            let k = sys.index(p, j);
            kinds[kk * stride + j] = NodeKind::Interior;
            for (nk, fwd) in [(kk - 1, false), (kk + 1, true)] {
                let sm = s + if fwd { 0.5 * ds } else { -0.5 * ds };
                let w = sm.exp() * wtheta[j] * dtheta / ds;
                sys.diag[k] += w;
                if nk == 0 || nk == ns {
                    b[k] += w * values[nk * stride + j];
                } else if fwd {
                    sys.up[k] = w;
                }
            }
            let w_out = wr * ((j as f64 + 0.5) * dtheta).sin() * ds / dtheta;
            sys.diag[k] += w_out;
            if j + 1 < ntheta {
                sys.off[k] = w_out;
            }
            if j > 0 {
                sys.diag[k] += wr * ((j as f64 - 0.5) * dtheta).sin() * ds / dtheta;
            }
        }
    }
    let (u, residual) = solve_planes(&sys, &b, opts)?;
    for kk in 1..ns {
        for j in 0..ntheta {
            values[kk * stride + j] = u[sys.index(kk - 1, j)];
        }
    }
    let grid = Grid::Spherical { s0, ds, ns, dtheta, ntheta };
    Ok(HarmonicField::finish(domain, grid, r_min, r_max, inlet, outlet, values, kinds, residual))
}

/// Default fraction of the window dropped at each end by [`growth_profile`].
pub const DEFAULT_TRIM: f64 = 0.15;

impl HarmonicField {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn finish(
        domain: &DomainSpec,
        grid: Grid,
        t_min: f64,
        t_max: f64,
        inlet: InletCap,
        outlet: OutletCap,
        values: Vec<f64>,
        kinds: Vec<NodeKind>,
        residual: f64,
    ) -> Self {
        let mut f = Self {
            domain: *domain,
            grid,
            t_min,
            t_max,
            inlet,
            outlet,
            values,
            kinds,
            residual,
            max_principle_ok: false,
        };
        f.max_principle_ok = f.check_maximum_principle();
        f
    }

    /// Interior values lie within the boundary data range up to
    /// `1e-12 * range`.
    pub fn check_maximum_principle(&self) -> bool {
        let (mut lo, mut hi) = (0.0f64, 0.0f64);
        for (v, k) in self.values.iter().zip(&self.kinds) {
            if *k != NodeKind::Interior {
                lo = lo.min(*v);
                hi = hi.max(*v);
            }
        }
        let slack = 1e-12 * (hi - lo);
        self.values
            .iter()
            .zip(&self.kinds)
            .filter(|(_, k)| **k == NodeKind::Interior)
            .all(|(v, _)| *v >= lo - slack && *v <= hi + slack)
    }

    /// Number of interior unknowns.
    pub fn unknowns(&self) -> usize {
        self.kinds.iter().filter(|k| **k == NodeKind::Interior).count()
    }

    /// Grid spacing (in `ln r` for the spherical grid).
    pub fn h(&self) -> f64 {
        match self.grid {
            Grid::Axisymmetric { h, .. } | Grid::Lattice { h, .. } => h,
            Grid::Spherical { ds, .. } => ds,
        }
    }

    /// Number of planes and the value layout of one plane.
    fn planes(&self) -> (usize, usize) {
        match self.grid {
            Grid::Axisymmetric { nx, nr, .. } => (nx + 1, nr),
            Grid::Spherical { ns, ntheta, .. } => (ns + 1, ntheta + 1),
            Grid::Lattice { nx, ny, nz, .. } => (nx + 1, ny * nz),
        }
    }

    fn plane_max(&self, i: usize) -> f64 {
        let (_, stride) = self.planes();
        self.values[i * stride..(i + 1) * stride].iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Plane coordinate of an axial position or radius, in grid units.
    fn plane_coordinate(&self, t: f64) -> f64 {
        match self.grid {
            Grid::Axisymmetric { x0, h, .. } | Grid::Lattice { x0, h, .. } => (t - x0) / h,
            Grid::Spherical { s0, ds, .. } => (t.ln() - s0) / ds,
        }
    }

    fn interpolate_planes(&self, t: f64) -> Result<f64> {
        if !(t >= self.t_min && t <= self.t_max) {
            return Err(Error::OutOfWindow(t));
        }
        let (np, _) = self.planes();
        let f = self.plane_coordinate(t).clamp(0.0, (np - 1) as f64);
        let i = (f.floor() as usize).min(np - 2);
        let w = f - i as f64;
        Ok((1.0 - w) * self.plane_max(i) + w * self.plane_max(i + 1))
    }

    /// `M(t)`: the maximum over the section `{x = t}`, linearly
    /// interpolated between adjacent grid planes.
    pub fn max_on_section(&self, t: f64) -> Result<f64> {
        if let Grid::Spherical { .. } = self.grid {
            return Err(Error::Unsupported("sections of a cone field; use max_on_sphere".into()));
        }
        self.interpolate_planes(t)
    }

    /// `M~(r)`: the maximum over the sphere `|xi| = r` inside the domain.
    pub fn max_on_sphere(&self, r: f64) -> Result<f64> {
        match self.grid {
            Grid::Spherical { .. } => self.interpolate_planes(r),
            _ => {
                if !(r > 0.0 && r <= self.t_max) {
                    return Err(Error::OutOfWindow(r));
                }
                let n = 4000;
                let mut best = f64::NEG_INFINITY;
                let azimuths = if self.domain.is_rotational() { 1 } else { 64 };
                for k in 0..=n {
                    let th = PI * k as f64 / n as f64;
                    for m in 0..azimuths {
                        let az = 2.0 * PI * m as f64 / azimuths as f64;
                        let y = [r * th.sin() * az.cos(), r * th.sin() * az.sin()];
                        if let Some(v) = self.value_at(self.domain.join(r * th.cos(), y)) {
                            best = best.max(v);
                        }
                    }
                }
                if best.is_finite() {
                    Ok(best)
                } else {
                    Err(Error::OutOfWindow(r))
                }
            }
        }
    }

    /// Field value at a point by (bi/tri)linear interpolation; zero
    /// outside the domain, `None` outside the window.
    pub fn value_at(&self, p: Point3) -> Option<f64> {
        let v = &self.values;
        match self.grid {
            Grid::Axisymmetric { x0, h, nx, nr } => {
                let (x, y) = self.domain.split(p);
                let fi = (x - x0) / h;
                let fj = y[0].hypot(y[1]) / h;
                if !(fi >= -1e-9 && fi <= nx as f64 + 1e-9) {
                    return None;
                }
                if fj >= (nr - 1) as f64 {
                    return Some(0.0);
                }
                let i = (fi.max(0.0).floor() as usize).min(nx - 1);
                let j = fj.floor() as usize;
                let (wi, wj) = (fi - i as f64, fj - j as f64);
                let g = |i: usize, j: usize| v[i * nr + j];
                Some(
                    (1.0 - wi) * ((1.0 - wj) * g(i, j) + wj * g(i, j + 1))
                        + wi * ((1.0 - wj) * g(i + 1, j) + wj * g(i + 1, j + 1)),
                )
            }
            Grid::Spherical { s0, ds, ns, dtheta, ntheta } => {
                let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
                let fk = (r.ln() - s0) / ds;
                if !(fk >= -1e-9 && fk <= ns as f64 + 1e-9) {
                    return None;
                }
                let fj = (p[2] / r).clamp(-1.0, 1.0).acos() / dtheta;
                if fj >= ntheta as f64 {
                    return Some(0.0);
                }
                let k = (fk.max(0.0).floor() as usize).min(ns - 1);
                let j = fj.floor() as usize;
                let (wk, wj) = (fk - k as f64, fj - j as f64);
                let st = ntheta + 1;
                let g = |k: usize, j: usize| v[k * st + j];
                Some(
                    (1.0 - wk) * ((1.0 - wj) * g(k, j) + wj * g(k, j + 1))
                        + wk * ((1.0 - wj) * g(k + 1, j) + wj * g(k + 1, j + 1)),
                )
            }
            Grid::Lattice { x0, h, nx, ny, nz } => {
                let fi = (p[0] - x0) / h;
                if !(fi >= -1e-9 && fi <= nx as f64 + 1e-9) {
                    return None;
                }
                let fy = p[1] / h + (ny - 1) as f64 / 2.0;
                let fz = p[2] / h + (nz - 1) as f64 / 2.0;
                if fy < 0.0 || fz < 0.0 || fy >= (ny - 1) as f64 || fz >= (nz - 1) as f64 {
                    return Some(0.0);
                }
                let i = (fi.max(0.0).floor() as usize).min(nx - 1);
                let (j, k) = (fy.floor() as usize, fz.floor() as usize);
                let (wi, wj, wk) = (fi - i as f64, fy - j as f64, fz - k as f64);
                let g = |i: usize, j: usize, k: usize| v[(i * ny + j) * nz + k];
                let mut acc = 0.0;
                for (di, a) in [(0, 1.0 - wi), (1, wi)] {
                    for (dj, b) in [(0, 1.0 - wj), (1, wj)] {
                        for (dk, c) in [(0, 1.0 - wk), (1, wk)] {
                            acc += a * b * c * g(i + di, j + dj, k + dk);
                        }
                    }
                }
                Some(acc)
            }
        }
    }

    /// Window `[lo, hi]` with a fraction `trim` removed at each end; in
    /// `ln r` for cone fields.
    pub fn interior_window(&self, trim: f64) -> (f64, f64) {
        match self.grid {
            Grid::Spherical { .. } => {
                let (a, b) = (self.t_min.ln(), self.t_max.ln());
                ((a + trim * (b - a)).exp(), (b - trim * (b - a)).exp())
            }
            _ => {
                let l = self.t_max - self.t_min;
                (self.t_min + trim * l, self.t_max - trim * l)
            }
        }
    }

    /// CSV of the meridian slice: `(x, rho, u)`, `(r, theta, u)` or, for the
    /// lattice, `(x, y, u)` on the plane through the axis.
    pub fn write_slice_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        match self.grid {
            Grid::Axisymmetric { x0, h, nx, nr } => {
                w.write_record(["x", "rho", "u"])?;
                for i in 0..=nx {
                    for j in 0..nr {
                        let x = x0 + i as f64 * h;
                        w.write_record([x.to_string(), (j as f64 * h).to_string(), self.values[i * nr + j].to_string()])?;
                    }
                }
            }
            Grid::Spherical { s0, ds, ns, dtheta, ntheta } => {
                w.write_record(["r", "theta", "u"])?;
                for k in 0..=ns {
                    for j in 0..=ntheta {
                        let r = (s0 + k as f64 * ds).exp();
                        let v = self.values[k * (ntheta + 1) + j];
                        w.write_record([r.to_string(), (j as f64 * dtheta).to_string(), v.to_string()])?;
                    }
                }
            }
            Grid::Lattice { x0, h, nx, ny, nz } => {
                w.write_record(["x", "y", "u"])?;
                let k = (nz - 1) / 2;
                for i in 0..=nx {
                    for j in 0..ny {
                        let y = (j as f64 - (ny - 1) as f64 / 2.0) * h;
                        let v = self.values[(i * ny + j) * nz + k];
                        w.write_record([(x0 + i as f64 * h).to_string(), y.to_string(), v.to_string()])?;
                    }
                }
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Measured `log M(t)` (or `log M~(r)` for cone fields) at the points of
/// `t_list` inside the window trimmed by [`DEFAULT_TRIM`] at each end.
pub fn growth_profile(field: &HarmonicField, t_list: &[f64]) -> Result<GrowthCurve> {
    growth_profile_trimmed(field, t_list, DEFAULT_TRIM)
}

/// [`growth_profile`] with an explicit trim fraction.
pub fn growth_profile_trimmed(field: &HarmonicField, t_list: &[f64], trim: f64) -> Result<GrowthCurve> {
    let (lo, hi) = field.interior_window(trim);
    let cone = matches!(field.grid, Grid::Spherical { .. });
    let mut samples = Vec::new();
    for &t in t_list {
        if !(t >= field.t_min && t <= field.t_max) {
            return Err(Error::OutOfWindow(t));
        }
        if t < lo * (1.0 - 1e-12) || t > hi * (1.0 + 1e-12) {
            continue;
        }
        let m = if cone { field.max_on_sphere(t)? } else { field.max_on_section(t)? };
        samples.push((t, m.ln()));
    }
    GrowthCurve::new(samples, Provenance::PdeMeasured)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn cylinder_error(h: f64) -> f64 {
        let d = DomainSpec::straight_cylinder(1.0);
        let f = solve_harmonic(&d, 0.0, 2.0, h, InletCap::Exact, OutletCap::Exact).unwrap();
        let ex = ExactData::for_domain(&d).unwrap();
        let Grid::Axisymmetric { x0, h, nx, nr } = f.grid else { unreachable!() };
        let mut err: f64 = 0.0;
        for i in 0..=nx {
            for j in 0..nr {
                let p = [x0 + i as f64 * h, j as f64 * h, 0.0];
                err = err.max((f.values[i * nr + j] - ex.value(p)).abs());
            }
        }
        err
    }

    #[test]
    fn straight_cylinder_second_order() {
        let e1 = cylinder_error(1.0 / 8.0);
        let e2 = cylinder_error(1.0 / 16.0);
        let ratio = e1 / e2;
        assert!((3.2..=4.8).contains(&ratio), "{e1} {e2} {ratio}");
    }

    #[test]
    fn hemisphere_cone_reproduces_z() {
        let d = DomainSpec::cone(FRAC_PI_2);
        let f = solve_harmonic(&d, 1.0, 4.0, FRAC_PI_2 / 32.0, InletCap::Exact, OutletCap::Exact).unwrap();
        assert!(f.residual < 1e-8 && f.max_principle_ok);
        for p in [[0.0, 0.0, 2.0], [1.0, 0.5, 1.5], [2.0, 0.0, 0.3]] {
            let v = f.value_at(p).unwrap();
            assert!((v - p[2]).abs() < 2e-3 * p[2].max(1.0), "{v} {p:?}");
        }
        assert!((f.max_on_sphere(3.0).unwrap() - 3.0).abs() < 3e-3);
    }

    #[test]
    fn direct_and_cg_agree() {
        let d = DomainSpec::paraboloid(1.0, 0.5);
        let f1 = solve_harmonic(&d, 4.0, 9.0, 0.1, InletCap::Zero, OutletCap::One).unwrap();
        let opts = SolveOptions { solver: SolverKind::ConjugateGradient, ..Default::default() };
        let f2 = solve_harmonic_with(&d, 4.0, 9.0, 0.1, InletCap::Zero, OutletCap::One, opts).unwrap();
        assert!(f1.residual < 1e-10 && f2.residual < 1e-8);
        let diff = f1.values.iter().zip(&f2.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(diff < 1e-8, "{diff}");
        assert!(f1.values.iter().all(|v| (0.0..=1.0 + 1e-12).contains(v)));
    }

    #[test]
    fn sections_are_monotone_with_zero_one_caps() {
        let d = DomainSpec::paraboloid(1.0, 0.5);
        let f = solve_harmonic(&d, 4.0, 16.0, 0.1, InletCap::Zero, OutletCap::One).unwrap();
        let ts: Vec<f64> = (0..=24).map(|k| 4.0 + 0.5 * k as f64).collect();
        let m: Vec<f64> = ts.iter().map(|&t| f.max_on_section(t).unwrap()).collect();
        assert!(m.windows(2).all(|w| w[1] >= w[0]));
        assert!(matches!(f.max_on_section(20.0), Err(Error::OutOfWindow(_))));
    }

    #[test]
    fn thin_sections_are_rejected() {
        let d = DomainSpec::straight_cylinder(1.0);
        let r = solve_harmonic(&d, 0.0, 2.0, 0.6, InletCap::Zero, OutletCap::One);
        assert!(matches!(r, Err(Error::MaskDegenerate(_))));
    }

    #[test]
    fn cone_growth_profile_slope() {
        let d = DomainSpec::cone(FRAC_PI_4);
        let alpha = CapMode::new(FRAC_PI_4).unwrap().alpha0;
        let f = solve_harmonic(&d, 1.0, 8.0, FRAC_PI_4 / 32.0, InletCap::Exact, OutletCap::Exact).unwrap();
        let rs: Vec<f64> = (0..=40).map(|k| (8f64.ln() * k as f64 / 40.0).exp()).collect();
        let g = growth_profile(&f, &rs).unwrap();
        let xs: Vec<f64> = g.ts().iter().map(|r| r.ln()).collect();
        let (slope, _) = crate::asymptotics::linear_fit(&xs, &g.values());
        assert!((slope / alpha - 1.0).abs() < 0.01, "{slope} {alpha}");
    }
}
