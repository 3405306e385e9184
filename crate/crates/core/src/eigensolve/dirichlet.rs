use super::EigenResult;
use crate::geometry::SectionMask;
use crate::linalg::{dot, norm2, pcg, SpdOperator};
use crate::{Error, Result};

const NONE: u32 = u32::MAX;

/// Five-point Dirichlet Laplacian `-Delta_h` restricted to a mask.
pub(crate) struct MaskLaplacian {
    nbr: Vec<[u32; 4]>,
    inv_h2: f64,
    pub coords: Vec<[f64; 2]>,
}

impl MaskLaplacian {
    pub fn new(mask: &SectionMask) -> Self {
        let mut index = vec![NONE; mask.inside.len()];
        let mut coords = Vec::new();
        for j in 0..mask.ny {
            for i in 0..mask.nx {
                let k = i + mask.nx * j;
                if mask.inside[k] {
                    index[k] = coords.len() as u32;
                    coords.push(mask.node(i, j));
                }
            }
        }
        let mut nbr = Vec::with_capacity(coords.len());
        for j in 0..mask.ny {
            for i in 0..mask.nx {
                let k = i + mask.nx * j;
                if mask.inside[k] {
                    nbr.push([index[k - 1], index[k + 1], index[k - mask.nx], index[k + mask.nx]]);
                }
            }
        }
        Self { nbr, inv_h2: 1.0 / (mask.h * mask.h), coords }
    }
}

impl SpdOperator for MaskLaplacian {
    fn dim(&self) -> usize {
        self.nbr.len()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (k, nb) in self.nbr.iter().enumerate() {
            let mut s = 4.0 * x[k];
            for &n in nb {
                if n != NONE {
                    s -= x[n as usize];
                }
            }
            y[k] = s * self.inv_h2;
        }
    }

    fn diagonal(&self) -> Vec<f64> {
        vec![4.0 * self.inv_h2; self.nbr.len()]
    }
}

/// Stopping rules for inverse iteration.
#[derive(Debug, Clone, Copy)]
pub struct DirichletOptions {
    pub max_iter: usize,
    /// Required `||A psi - lambda W psi||_inf / (lambda max W)`.
    pub rel_residual: f64,
}

impl Default for DirichletOptions {
    fn default() -> Self {
        Self { max_iter: 10_000, rel_residual: 1e-8 }
    }
}

/// Principal eigenvalue of the five-point Dirichlet Laplacian on a mask, by
/// inverse power iteration (shift 0) with conjugate-gradient inner solves.
pub fn dirichlet_lambda1(section: &SectionMask) -> Result<EigenResult> {
    dirichlet_lambda1_weighted(section, None, DirichletOptions::default())
}

/// Generalised problem `-Delta_h psi = lambda W psi` with a positive
/// diagonal weight evaluated at the mask nodes (`None` means `W = 1`).
pub fn dirichlet_lambda1_weighted(
    section: &SectionMask,
    weight: Option<&dyn Fn([f64; 2]) -> f64>,
    opts: DirichletOptions,
) -> Result<EigenResult> {
    section.validate()?;
    let op = MaskLaplacian::new(section);
    let n = op.dim();
    let w: Vec<f64> = match weight {
        Some(f) => op.coords.iter().map(|&c| f(c)).collect(),
        None => vec![1.0; n],
    };
    let w_max = w.iter().cloned().fold(0.0, f64::max);

    let mut x = vec![1.0; n];
    let mut y = vec![0.0; n];
    let mut ax = vec![0.0; n];
    let mut b = vec![0.0; n];
    let mut lambda = 0.0;
    let mut rel = 1.0f64;
    let mut residual = f64::INFINITY;
    for it in 1..=opts.max_iter {
        for k in 0..n {
            b[k] = w[k] * x[k];
        }
        if lambda > 0.0 {
            for k in 0..n {
                y[k] = x[k] / lambda;
            }
        }
        // Inexact inner solves: accuracy tracks the current eigen-residual.
        let tol = (0.02 * rel).clamp(1e-13, 1e-2);
        pcg(&op, &b, &mut y, tol, 0.0, 200_000)?;

        op.apply(&y, &mut ax);
        let ywy: f64 = y.iter().zip(&w).map(|(v, w)| v * v * w).sum();
        lambda = dot(&y, &ax) / ywy;
        let sup = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let sign = if y.iter().sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
        for k in 0..n {
            x[k] = sign * y[k] / sup;
        }
        op.apply(&x, &mut ax);
        let mut r2 = 0.0;
        residual = 0.0;
        for k in 0..n {
            let r = ax[k] - lambda * w[k] * x[k];
            residual = residual.max(r.abs());
            r2 += r * r;
        }
        let wx: Vec<f64> = x.iter().zip(&w).map(|(x, w)| x * w).collect();
        rel = r2.sqrt() / (lambda * norm2(&wx));
        if residual < opts.rel_residual * lambda * w_max && it > 1 {
            return Ok(EigenResult { lambda, eigenfunction: x, coords: op.coords, residual, h: section.h });
        }
    }
    Err(Error::NoConvergence { iterations: opts.max_iter, residual })
}
