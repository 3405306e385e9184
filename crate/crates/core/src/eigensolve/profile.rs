use std::io::Write;

use rayon::prelude::*;

use super::dirichlet_lambda1;
use crate::geometry::{section_at, DomainSpec};
use crate::interp::MonotoneCubic;
use crate::{Error, Result};

/// Principal eigenvalues of the physical sections `{Y : (t, Y) in domain}`
/// at a set of heights, with a monotone interpolant between them.
#[derive(Debug, Clone)]
pub struct LambdaProfile {
    pub ts: Vec<f64>,
    /// Physical eigenvalue of the section at `t`.
    pub lambda: Vec<f64>,
    /// Eigenvalue of the unit section, `lambda * a(t)^2`.
    pub lambda_unit: Vec<f64>,
    /// Interpolant of `ln lambda` against `ln t`, so power laws are exact.
    log_interp: MonotoneCubic,
    unit_interp: MonotoneCubic,
}

impl LambdaProfile {
    /// Physical eigenvalue at `t`, interpolated between knots.
    pub fn eval(&self, t: f64) -> f64 {
        self.log_interp.eval(t.ln()).exp()
    }

    /// Unit-section eigenvalue at `t` (the eigenvalue of the limiting
    /// cylinder cross-section entering the growth integral).
    pub fn eval_unit(&self, t: f64) -> f64 {
        self.unit_interp.eval(t.ln())
    }

    /// CSV `(t, lambda)`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "lambda"])?;
        for (t, l) in self.ts.iter().zip(&self.lambda) {
            w.write_record([t.to_string(), l.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Eigenvalue table `t -> lambda(t)`; each section is discretised with
/// spacing `h_unit * a(t)` so the unit-shape grids coincide.
pub fn lambda_profile(domain: &DomainSpec, t_list: &[f64], h_unit: f64) -> Result<LambdaProfile> {
    domain.validate()?;
    if t_list.is_empty() {
        return Err(Error::InvalidArgument("t_list is empty".into()));
    }
    let mut ts = t_list.to_vec();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    let rows: Vec<(f64, f64)> = ts
        .par_iter()
        .map(|&t| {
            let a = domain
                .profile(t)
                .ok_or_else(|| Error::Unsupported(format!("no bounded section at t = {t}")))?;
            let mask = section_at(domain, t, h_unit * a)?;
            let r = dirichlet_lambda1(&mask)?;
            Ok((r.lambda, r.lambda * a * a))
        })
        .collect::<Result<_>>()?;
    let lambda: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let lambda_unit: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let log_t: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let log_interp = MonotoneCubic::new(log_t.clone(), lambda.iter().map(|l| l.ln()).collect())?;
    let unit_interp = MonotoneCubic::new(log_t, lambda_unit.clone())?;
    Ok(LambdaProfile { ts, lambda, lambda_unit, log_interp, unit_interp })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paraboloid_profile_follows_scaling_law() {
        let d = DomainSpec::paraboloid(1.0, 0.5);
        let p = lambda_profile(&d, &[1.0, 4.0, 16.0, 64.0], 1.0 / 24.0).unwrap();
        let l1 = p.lambda[0];
        for (t, l) in p.ts.iter().zip(&p.lambda) {
            assert!((l * t - l1).abs() < 1e-3 * l1, "{t}: {l}");
        }
        // Interpolation in log-log space keeps the power law between knots.
        assert!((p.eval(8.0) * 8.0 - l1).abs() < 2e-3 * l1);
    }

    #[test]
    fn cylinder_profile_is_constant() {
        let d = DomainSpec::straight_cylinder(1.0);
        let p = lambda_profile(&d, &[1.0, 10.0, 100.0], 1.0 / 24.0).unwrap();
        assert!(p.lambda.iter().all(|l| (l - p.lambda[0]).abs() < 1e-9 * l));
    }
}
