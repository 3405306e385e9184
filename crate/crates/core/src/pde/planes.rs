use crate::linalg::{DenseSym, SpdOperator};
use crate::Result;

/// SPD system whose unknowns are grouped into planes, each plane a prefix
/// of a line of nodes. Couplings are nearest-neighbour within a plane and
/// node-to-node between consecutive planes, so the matrix is block
/// tridiagonal with tridiagonal diagonal blocks and diagonal off-diagonal
/// blocks.
#[derive(Debug, Clone)]
pub(crate) struct PlaneSystem {
    pub sizes: Vec<usize>,
    pub offsets: Vec<usize>,
    pub diag: Vec<f64>,
    /// `off[o + j]` couples nodes `j` and `j + 1` of the plane at offset `o`.
    pub off: Vec<f64>,
    /// `up[o + j]` couples node `j` of a plane with node `j` of the next.
    pub up: Vec<f64>,
}

impl PlaneSystem {
    pub fn new(sizes: Vec<usize>) -> Self {
        let mut offsets = Vec::with_capacity(sizes.len() + 1);
        let mut n = 0;
        for &m in &sizes {
            offsets.push(n);
            n += m;
        }
        offsets.push(n);
        Self { sizes, offsets, diag: vec![0.0; n], off: vec![0.0; n], up: vec![0.0; n] }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    #[inline]
    pub fn index(&self, plane: usize, j: usize) -> usize {
        self.offsets[plane] + j
    }

    /// Block-tridiagonal Cholesky elimination plane by plane, keeping the
    /// inverse Schur complements for back substitution.
    ///
    /// With right-hand sides supported near the caps the back substitution
    /// only multiplies nonnegative quantities, so exponentially small
    /// values keep full relative accuracy.
    pub fn solve_direct(&self, b: &[f64]) -> Result<Vec<f64>> {
        let np = self.sizes.len();
        let mut sinv: Vec<DenseSym> = Vec::with_capacity(np);
        let mut y = b.to_vec();
        for p in 0..np {
            let (m, o) = (self.sizes[p], self.offsets[p]);
            let mut s = DenseSym::zeros(m);
            for j in 0..m {
                s.set(j, j, self.diag[o + j]);
                if j + 1 < m {
                    s.set(j, j + 1, -self.off[o + j]);
                    s.set(j + 1, j, -self.off[o + j]);
                }
            }
            if p > 0 {
                let prev = &sinv[p - 1];
                let (mp, op) = (self.sizes[p - 1], self.offsets[p - 1]);
                let k = mp.min(m);
                for j in 0..k {
                    let uj = self.up[op + j];
                    let row = &prev.a[j * mp..j * mp + mp];
                    for l in 0..k {
                        s.a[j * m + l] -= uj * row[l] * self.up[op + l];
                    }
                    let acc: f64 = row.iter().zip(&y[op..op + mp]).map(|(a, b)| a * b).sum();
                    y[o + j] += uj * acc;
                }
            }
            s.invert_spd()?;
            sinv.push(s);
        }
        let mut u = vec![0.0; self.len()];
        let mut rhs = Vec::new();
        for p in (0..np).rev() {
            let (m, o) = (self.sizes[p], self.offsets[p]);
            rhs.clear();
            rhs.extend_from_slice(&y[o..o + m]);
            if p + 1 < np {
                let on = self.offsets[p + 1];
                for j in 0..m.min(self.sizes[p + 1]) {
                    rhs[j] += self.up[o + j] * u[on + j];
                }
            }
            let s = &sinv[p];
            for j in 0..m {
                u[o + j] = s.a[j * m..j * m + m].iter().zip(&rhs).map(|(a, b)| a * b).sum();
            }
        }
        Ok(u)
    }
}

impl SpdOperator for PlaneSystem {
    fn dim(&self) -> usize {
        self.len()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (i, v) in y.iter_mut().enumerate() {
            *v = self.diag[i] * x[i];
        }
        let np = self.sizes.len();
        for p in 0..np {
            let (m, o) = (self.sizes[p], self.offsets[p]);
            for j in 0..m.saturating_sub(1) {
                let w = self.off[o + j];
                y[o + j] -= w * x[o + j + 1];
                y[o + j + 1] -= w * x[o + j];
            }
            if p + 1 < np {
                let on = self.offsets[p + 1];
                for j in 0..m.min(self.sizes[p + 1]) {
                    let w = self.up[o + j];
                    y[o + j] -= w * x[on + j];
                    y[on + j] -= w * x[o + j];
                }
            }
        }
    }

    fn diagonal(&self) -> Vec<f64> {
        self.diag.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pcg;

    /// 2D Dirichlet Laplacian on a staircase of plane sizes.
    fn staircase() -> PlaneSystem {
        let sizes = vec![3, 5, 4, 6, 2];
        let mut s = PlaneSystem::new(sizes.clone());
        for p in 0..sizes.len() {
            for j in 0..sizes[p] {
                let i = s.index(p, j);
                s.diag[i] = 4.0 + 0.1 * j as f64;
                if j + 1 < sizes[p] {
                    s.off[i] = 1.0;
                }
                if p + 1 < sizes.len() && j < sizes[p + 1] {
                    s.up[i] = 1.0;
                }
            }
        }
        s
    }

    #[test]
    fn direct_matches_cg() {
        let s = staircase();
        let b: Vec<f64> = (0..s.len()).map(|i| (i as f64 * 0.37).sin()).collect();
        let u = s.solve_direct(&b).unwrap();
        let mut x = vec![0.0; s.len()];
        pcg(&s, &b, &mut x, 1e-14, 0.0, 1000).unwrap();
        for (a, b) in u.iter().zip(&x) {
            assert!((a - b).abs() < 1e-12);
        }
        let mut r = vec![0.0; s.len()];
        s.apply(&u, &mut r);
        for (r, b) in r.iter().zip(&b) {
            assert!((r - b).abs() < 1e-12);
        }
    }
}
