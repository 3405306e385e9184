//! Principal eigenvalues of planar sections and spherical caps, and the
//! characteristic constant derived from them.

mod beltrami;
mod dirichlet;
mod profile;

use std::io::Write;

pub use beltrami::{beltrami_lambda1, beltrami_lambda1_fd, spherical_section_alpha, stereographic_weight};
pub use dirichlet::{dirichlet_lambda1, dirichlet_lambda1_weighted, DirichletOptions};
pub use profile::{lambda_profile, LambdaProfile};

use crate::{Error, Result};

/// Principal eigenpair of a discretised Dirichlet problem.
#[derive(Debug, Clone)]
pub struct EigenResult {
    /// Principal eigenvalue (1/length^2 for planar sections, dimensionless
    /// on the unit sphere).
    pub lambda: f64,
    /// Positive eigenfunction samples with maximum 1.
    pub eigenfunction: Vec<f64>,
    /// Sample coordinates: planar nodes, or `(polar angle, 0)` for caps.
    pub coords: Vec<[f64; 2]>,
    /// `||A psi - lambda psi||_inf` at return.
    pub residual: f64,
    pub h: f64,
}

impl EigenResult {
    pub fn is_positive(&self) -> bool {
        self.eigenfunction.iter().all(|&v| v > 0.0)
    }

    /// CSV `(y1, y2, psi)`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["y1", "y2", "psi"])?;
        for (c, v) in self.coords.iter().zip(&self.eigenfunction) {
            w.write_record([c[0].to_string(), c[1].to_string(), v.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Positive root `alpha` of `s^2 + (d - 2) s - lambda = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicConstant {
    pub alpha: f64,
    pub lambda_source: f64,
    pub dim: usize,
}

impl CharacteristicConstant {
    /// Relative residual of the defining quadratic.
    pub fn quadratic_residual(&self) -> f64 {
        let d2 = self.dim as f64 - 2.0;
        let a = self.alpha;
        (a * a + d2 * a - self.lambda_source).abs() / self.lambda_source.max(a * a)
    }
}

pub fn characteristic_constant(lambda: f64, d: usize) -> Result<CharacteristicConstant> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::NonpositiveLambda(lambda));
    }
    if d < 3 {
        return Err(Error::InvalidArgument(format!("dimension must be at least 3, got {d}")));
    }
    let d2 = d as f64 - 2.0;
    // Rationalised form of (-(d-2) + sqrt((d-2)^2 + 4 lambda)) / 2; it has
    // no cancellation for small lambda.
    let alpha = 2.0 * lambda / (d2 + (d2 * d2 + 4.0 * lambda).sqrt());
    Ok(CharacteristicConstant { alpha, lambda_source: lambda, dim: d })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characteristic_constant_examples() {
        assert!((characteristic_constant(2.0, 3).unwrap().alpha - 1.0).abs() < 1e-15);
        for d in 3..8 {
            let c = characteristic_constant(d as f64 - 1.0, d).unwrap();
            assert!((c.alpha - 1.0).abs() < 1e-14);
        }
        let c = characteristic_constant(5.783185963, 3).unwrap();
        assert!((c.alpha - 1.95624).abs() < 2e-5);
        assert!(c.quadratic_residual() < 1e-14);
    }

    #[test]
    fn characteristic_constant_rejects_nonpositive() {
        assert!(matches!(characteristic_constant(0.0, 3), Err(Error::NonpositiveLambda(_))));
        assert!(matches!(characteristic_constant(-1.0, 3), Err(Error::NonpositiveLambda(_))));
    }
}
