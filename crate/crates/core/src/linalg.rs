//! Matrix-free preconditioned conjugate gradients and a small dense SPD
//! toolkit used by the block-tridiagonal marching solver.

use crate::{Error, Result};

/// A symmetric positive definite operator applied without forming a matrix.
pub trait SpdOperator {
    fn dim(&self) -> usize;
    /// `y = A x`
    fn apply(&self, x: &[f64], y: &mut [f64]);
    /// Diagonal of `A`, used for Jacobi preconditioning.
    fn diagonal(&self) -> Vec<f64>;
}

#[derive(Debug, Clone, Copy)]
pub struct CgReport {
    pub iterations: usize,
    /// Final `||b - A x||_2 / ||b||_2`.
    pub relative_residual: f64,
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Jacobi-preconditioned conjugate gradients for `A x = b`, starting from
/// the contents of `x`.
///
/// Stops when `||r||_2 <= rel_tol * ||b||_2` (or `abs_floor`, whichever is
/// larger).
pub fn pcg<A: SpdOperator + ?Sized>(
    op: &A,
    b: &[f64],
    x: &mut [f64],
    rel_tol: f64,
    abs_floor: f64,
    max_iter: usize,
) -> Result<CgReport> {
    let n = op.dim();
    assert_eq!(b.len(), n);
    assert_eq!(x.len(), n);
    let inv_diag: Vec<f64> = op.diagonal().iter().map(|d| 1.0 / d).collect();
    let b_norm = norm2(b);
    if b_norm == 0.0 {
        x.iter_mut().for_each(|v| *v = 0.0);
        return Ok(CgReport { iterations: 0, relative_residual: 0.0 });
    }
    let target = (rel_tol * b_norm).max(abs_floor);

    let mut r = vec![0.0; n];
    op.apply(x, &mut r);
    for i in 0..n {
        r[i] = b[i] - r[i];
    }
    let mut z: Vec<f64> = r.iter().zip(&inv_diag).map(|(r, d)| r * d).collect();
    let mut p = z.clone();
    let mut ap = vec![0.0; n];
    let mut rz = dot(&r, &z);
    let mut r_norm = norm2(&r);
    let mut it = 0;
    while r_norm > target {
        if it >= max_iter {
            return Err(Error::SolverDivergence(format!(
                "conjugate gradients did not converge in {max_iter} iterations (relative residual {:e})",
                r_norm / b_norm
            )));
        }
        op.apply(&p, &mut ap);
        let pap = dot(&p, &ap);
        if !(pap > 0.0) {
            return Err(Error::SolverDivergence("operator is not positive definite".into()));
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        for i in 0..n {
            z[i] = r[i] * inv_diag[i];
        }
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
        r_norm = norm2(&r);
        it += 1;
    }
    // Recompute the true residual; the recurrence drifts on long runs.
    op.apply(x, &mut ap);
    let true_res = b.iter().zip(&ap).map(|(b, a)| (b - a) * (b - a)).sum::<f64>().sqrt();
    Ok(CgReport { iterations: it, relative_residual: true_res / b_norm })
}

/// Dense symmetric matrix stored row-major.
#[derive(Debug, Clone)]
pub(crate) struct DenseSym {
    pub n: usize,
    pub a: Vec<f64>,
}

impl DenseSym {
    pub fn zeros(n: usize) -> Self {
        Self { n, a: vec![0.0; n * n] }
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
    }

    /// In-place inverse of an SPD matrix via Cholesky.
    pub fn invert_spd(&mut self) -> Result<()> {
        let n = self.n;
        // Cholesky: lower factor in the lower triangle.
        let mut l = vec![0.0; n * n];
        for j in 0..n {
            let mut d = self.a[j * n + j];
            for k in 0..j {
                d -= l[j * n + k] * l[j * n + k];
            }
            if !(d > 0.0) {
                return Err(Error::SolverDivergence("block is not positive definite".into()));
            }
            let d = d.sqrt();
            l[j * n + j] = d;
            for i in j + 1..n {
                let mut s = self.a[i * n + j];
                let (ri, rj) = (&l[i * n..i * n + j], &l[j * n..j * n + j]);
                s -= dot(ri, rj);
                l[i * n + j] = s / d;
            }
        }
        // Inverse of the lower factor, stored row-major in `li`.
        let mut li = vec![0.0; n * n];
        for i in 0..n {
            li[i * n + i] = 1.0 / l[i * n + i];
            for j in 0..i {
                let mut s = 0.0;
                for k in j..i {
                    s += l[i * n + k] * li[k * n + j];
                }
                li[i * n + j] = -s / l[i * n + i];
            }
        }
        // A^-1 = L^-T L^-1
        for i in 0..n {
            for j in 0..=i {
                let mut s = 0.0;
                for k in i..n {
                    s += li[k * n + i] * li[k * n + j];
                }
                self.a[i * n + j] = s;
                self.a[j * n + i] = s;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Tridiag(usize);

    impl SpdOperator for Tridiag {
        fn dim(&self) -> usize {
            self.0
        }
        fn apply(&self, x: &[f64], y: &mut [f64]) {
            let n = self.0;
            for i in 0..n {
                let mut v = 2.0 * x[i];
                if i > 0 {
                    v -= x[i - 1];
                }
                if i + 1 < n {
                    v -= x[i + 1];
                }
                y[i] = v;
            }
        }
        fn diagonal(&self) -> Vec<f64> {
            vec![2.0; self.0]
        }
    }

    #[test]
    fn cg_solves_1d_poisson() {
        let n = 50;
        let op = Tridiag(n);
        let exact: Vec<f64> = (0..n).map(|i| (i as f64 * 0.3).sin()).collect();
        let mut b = vec![0.0; n];
        op.apply(&exact, &mut b);
        let mut x = vec![0.0; n];
        let rep = pcg(&op, &b, &mut x, 1e-12, 0.0, 1000).unwrap();
        assert!(rep.relative_residual < 1e-11);
        for (a, e) in x.iter().zip(&exact) {
            assert!((a - e).abs() < 1e-9);
        }
    }

    #[test]
    fn dense_inverse() {
        let mut m = DenseSym::zeros(3);
        let vals = [[4.0, 1.0, 0.5], [1.0, 3.0, 0.2], [0.5, 0.2, 2.0]];
        for i in 0..3 {
            for j in 0..3 {
                m.set(i, j, vals[i][j]);
            }
        }
        let mut inv = m.clone();
        inv.invert_spd().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s: f64 = (0..3).map(|k| vals[i][k] * inv.a[k * 3 + j]).sum();
                assert!((s - if i == j { 1.0 } else { 0.0 }).abs() < 1e-13);
            }
        }
    }
}
