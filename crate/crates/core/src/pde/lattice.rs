use rayon::prelude::*;

use super::{cap_values, check_thickness, relative_residual, Grid, HarmonicField, InletCap, NodeKind, OutletCap, SolveOptions};
use crate::geometry::DomainSpec;
use crate::linalg::{pcg, SpdOperator};
use crate::{Error, Result};

const NONE: u32 = u32::MAX;

/// Seven-point Laplacian on the interior nodes of a 3D lattice.
struct LatticeLaplacian {
    neighbours: Vec<[u32; 6]>,
}

impl SpdOperator for LatticeLaplacian {
    fn dim(&self) -> usize {
        self.neighbours.len()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        y.par_iter_mut().zip(&self.neighbours).enumerate().for_each(|(i, (yi, nb))| {
            let mut v = 6.0 * x[i];
            for &n in nb {
                if n != NONE {
                    v -= x[n as usize];
                }
            }
            *yi = v;
        });
    }

    fn diagonal(&self) -> Vec<f64> {
        vec![6.0; self.neighbours.len()]
    }
}

/// Full 3D solve for cylinder-like domains with arbitrary sections.
pub(super) fn solve(
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
    let a_max = (0..=nx).filter_map(|i| domain.profile(t_min + i as f64 * h)).fold(0.0, f64::max);
    let half_y = a_max;
    let half_z = a_max * if domain.kind == crate::geometry::DomainKind::EllipticParaboloid { domain.ellipse_b } else { 1.0 };
    let ny = 2 * (half_y / h).ceil() as usize + 3;
    let nz = 2 * (half_z / h).ceil() as usize + 3;
    let cells = (nx + 1) * ny * nz;
    if cells > 2_000_000 {
        return Err(Error::InvalidArgument(format!("lattice of {cells} cells exceeds the 2e6 budget")));
    }
    let coord = |i: usize, j: usize, k: usize| {
        [
            t_min + i as f64 * h,
            (j as f64 - (ny - 1) as f64 / 2.0) * h,
            (k as f64 - (nz - 1) as f64 / 2.0) * h,
        ]
    };
    let inside = |i: usize, j: usize, k: usize| {
        let p = coord(i, j, k);
        match domain.profile(p[0]) {
            Some(a) => domain.in_unit_cross([p[1] / a, p[2] / a]),
            None => false,
        }
    };
    let (exact, capf) = cap_values(domain, inlet, outlet)?;
    let idx = |i: usize, j: usize, k: usize| (i * ny + j) * nz + k;
    let mut values = vec![0.0; cells];
    let mut kinds = vec![NodeKind::Exterior; cells];
    let mut unknown = vec![NONE; cells];
    let mut n = 0u32;
    for i in 0..=nx {
        let mut across = 0;
        for j in 0..ny {
            let mut row = 0;
            for k in 0..nz {
                if !inside(i, j, k) {
                    continue;
                }
                row += 1;
                let c = idx(i, j, k);
                if i == 0 || i == nx {
                    kinds[c] = NodeKind::Cap;
                    values[c] = capf(i == nx, coord(i, j, k), &exact);
                } else {
                    kinds[c] = NodeKind::Interior;
                    unknown[c] = n;
                    n += 1;
                }
            }
            across = usize::max(across, row);
        }
        if i > 0 && i < nx {
            check_thickness(across, t_min + i as f64 * h)?;
        }
    }
    let mut neighbours = vec![[NONE; 6]; n as usize];
    let mut b = vec![0.0; n as usize];
    for i in 1..nx {
        for j in 1..ny - 1 {
            for k in 1..nz - 1 {
                let u = unknown[idx(i, j, k)];
                if u == NONE {
                    continue;
                }
                let nbrs = [
                    idx(i - 1, j, k),
                    idx(i + 1, j, k),
                    idx(i, j - 1, k),
                    idx(i, j + 1, k),
                    idx(i, j, k - 1),
                    idx(i, j, k + 1),
                ];
                for (s, &c) in nbrs.iter().enumerate() {
                    neighbours[u as usize][s] = unknown[c];
                    if kinds[c] == NodeKind::Cap {
                        b[u as usize] += values[c];
                    }
                }
            }
        }
    }
    let op = LatticeLaplacian { neighbours };
    let mut x = vec![0.0; n as usize];
    pcg(&op, &b, &mut x, opts.cg_tol, 0.0, opts.max_iter)?;
    let residual = relative_residual(&op, &x, &b);
    for (c, &u) in unknown.iter().enumerate() {
        if u != NONE {
            values[c] = x[u as usize];
        }
    }
    Ok(HarmonicField::finish(domain, Grid::Lattice { x0: t_min, h, nx, ny, nz }, t_min, t_max, inlet, outlet, values, kinds, residual))
}
