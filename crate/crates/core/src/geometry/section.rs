use std::io::Write;

use super::DomainSpec;
use crate::{Error, Result};

/// A planar region discretised on a uniform grid centred at the origin.
///
/// Grid node `(i, j)` sits at `(origin[0] + i h, origin[1] + j h)`. Nodes
/// outside the mask carry homogeneous Dirichlet data. The array always
/// keeps at least one layer of outside nodes around the mask, so every
/// mask node has four neighbours in the array.
#[derive(Debug, Clone)]
pub struct SectionMask {
    pub h: f64,
    pub origin: [f64; 2],
    pub nx: usize,
    pub ny: usize,
    pub inside: Vec<bool>,
    /// Physical length that maps the section onto its unit shape.
    pub scale: f64,
}

impl SectionMask {
    /// Builds a mask from a membership predicate on the box
    /// `[-half_extent[0], half_extent[0]] x [-half_extent[1], half_extent[1]]`.
    pub fn from_predicate<F: Fn([f64; 2]) -> bool>(half_extent: [f64; 2], h: f64, scale: f64, pred: F) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::InvalidArgument("grid spacing must be positive".into()));
        }
        let mx = (half_extent[0] / h).ceil() as usize + 1;
        let my = (half_extent[1] / h).ceil() as usize + 1;
        let (nx, ny) = (2 * mx + 1, 2 * my + 1);
        let origin = [-(mx as f64) * h, -(my as f64) * h];
        let mut inside = vec![false; nx * ny];
        for j in 1..ny - 1 {
            for i in 1..nx - 1 {
                let y = [origin[0] + i as f64 * h, origin[1] + j as f64 * h];
                inside[i + nx * j] = pred(y);
            }
        }
        let mask = Self { h, origin, nx, ny, inside, scale };
        mask.validate()?;
        Ok(mask)
    }

    /// The square `(-side/2, side/2)^2`; nodes on its edges are Dirichlet.
    pub fn square(side: f64, h: f64) -> Result<Self> {
        let half = 0.5 * side;
        let eps = 1e-9 * h;
        Self::from_predicate([half, half], h, side, |y| y[0].abs() < half - eps && y[1].abs() < half - eps)
    }

    /// The open disk of the given radius.
    pub fn disk(radius: f64, h: f64) -> Result<Self> {
        Self::from_predicate([radius, radius], h, radius, |y| y[0] * y[0] + y[1] * y[1] < radius * radius)
    }

    pub fn len(&self) -> usize {
        self.inside.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn node(&self, i: usize, j: usize) -> [f64; 2] {
        [self.origin[0] + i as f64 * self.h, self.origin[1] + j as f64 * self.h]
    }

    /// Mask node with an outside neighbour.
    pub fn is_boundary(&self, i: usize, j: usize) -> bool {
        let k = i + self.nx * j;
        self.inside[k]
            && !(self.inside[k - 1] && self.inside[k + 1] && self.inside[k - self.nx] && self.inside[k + self.nx])
    }

    /// Checks non-emptiness and 4-connectivity.
    pub fn validate(&self) -> Result<()> {
        let total = self.len();
        if total == 0 {
            return Err(Error::MaskDegenerate("mask has no nodes".into()));
        }
        let start = self.inside.iter().position(|&b| b).unwrap();
        let mut seen = vec![false; self.inside.len()];
        let mut stack = vec![start];
        seen[start] = true;
        let mut count = 0;
        while let Some(k) = stack.pop() {
            count += 1;
            for n in [k - 1, k + 1, k - self.nx, k + self.nx] {
                if self.inside[n] && !seen[n] {
                    seen[n] = true;
                    stack.push(n);
                }
            }
        }
        if count != total {
            return Err(Error::MaskDegenerate(format!("mask has {} nodes but only {count} are connected", total)));
        }
        Ok(())
    }

    /// Grid spacing divided by the physical scale.
    pub fn unit_spacing(&self) -> f64 {
        self.h / self.scale
    }
}

/// Cross-section `{Y : (t, Y) in domain}` on a grid of spacing `h`.
pub fn section_at(domain: &DomainSpec, t: f64, h: f64) -> Result<SectionMask> {
    domain.validate()?;
    if !(t > 0.0) {
        return Err(Error::InvalidArgument(format!("section height must be positive, got {t}")));
    }
    let a = domain
        .profile(t)
        .ok_or_else(|| Error::Unsupported(format!("section of {:?} at t = {t} is unbounded", domain.kind)))?;
    if a * domain.min_semi_axis() < 2.0 * h {
        return Err(Error::EmptySection { t, h });
    }
    let ext = [a, a * domain.min_semi_axis()];
    let d = *domain;
    SectionMask::from_predicate(ext, h, a, move |y| d.in_unit_cross([y[0] / a, y[1] / a]))
}

/// Writes grid samples as CSV `(y1, y2, psi)` for the mask nodes.
pub fn write_grid_csv<W: Write>(mask: &SectionMask, values: &[f64], mut out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(&mut out);
    w.write_record(["y1", "y2", "psi"])?;
    let mut k = 0;
    for j in 0..mask.ny {
        for i in 0..mask.nx {
            if mask.inside[i + mask.nx * j] {
                let y = mask.node(i, j);
                w.write_record([y[0].to_string(), y[1].to_string(), values[k].to_string()])?;
                k += 1;
            }
        }
    }
    w.flush()?;
    Ok(())
}
