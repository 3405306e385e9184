//! Growth formulas for positive harmonic functions: the cylinder integral
//! `∫ sqrt(lambda)/a`, the cone integral `∫ alpha(y)/y`, the Huber lower
//! bound and the reciprocal harmonic-measure bound, plus comparison of
//! predicted and measured growth curves.

use std::f64::consts::E;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::quadrature::adaptive_simpson;
use crate::{Error, Result};

/// Default absolute quadrature tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Where the values of a growth curve come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    FormulaCylinder,
    FormulaCone,
    HuberBound,
    PdeMeasured,
    ExactOracle,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::FormulaCylinder => "FormulaCylinder",
            Provenance::FormulaCone => "FormulaCone",
            Provenance::HuberBound => "HuberBound",
            Provenance::PdeMeasured => "PdeMeasured",
            Provenance::ExactOracle => "ExactOracle",
        }
    }
}

/// Samples `(t, log M(t))`, predicted or measured.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthCurve {
    pub samples: Vec<(f64, f64)>,
    pub provenance: Provenance,
    /// Relative discrepancy against a reference curve, once compared.
    pub rho: Option<Vec<f64>>,
}

impl GrowthCurve {
    pub fn new(samples: Vec<(f64, f64)>, provenance: Provenance) -> Result<Self> {
        if samples.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(Error::InvalidArgument("growth curve abscissae must increase strictly".into()));
        }
        if samples.iter().any(|s| !s.0.is_finite() || !s.1.is_finite()) {
            return Err(Error::InvalidArgument("growth curve values must be finite".into()));
        }
        Ok(Self { samples, provenance, rho: None })
    }

    /// Tabulates `f` at `ts`.
    pub fn from_fn<F: Fn(f64) -> Result<f64>>(ts: &[f64], provenance: Provenance, f: F) -> Result<Self> {
        let samples = ts.iter().map(|&t| Ok((t, f(t)?))).collect::<Result<_>>()?;
        Self::new(samples, provenance)
    }

    pub fn ts(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.0).collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.1).collect()
    }

    /// Linear interpolation; `None` outside the sampled range.
    pub fn value_at(&self, t: f64) -> Option<f64> {
        let s = &self.samples;
        let (first, last) = (s.first()?, s.last()?);
        if t < first.0 || t > last.0 {
            return None;
        }
        if s.len() == 1 {
            return Some(first.1);
        }
        let i = s.partition_point(|p| p.0 < t).clamp(1, s.len() - 1);
        let (a, b) = (s[i - 1], s[i]);
        Some(a.1 + (b.1 - a.1) * (t - a.0) / (b.0 - a.0))
    }

    /// Adds a constant to every value (fixes the free multiplicative
    /// normalization of `M`).
    pub fn shifted(&self, c: f64) -> Self {
        Self {
            samples: self.samples.iter().map(|&(t, v)| (t, v + c)).collect(),
            provenance: self.provenance,
            rho: None,
        }
    }

    /// CSV `(t, value, provenance, rho)`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "value", "provenance", "rho"])?;
        for (i, (t, v)) in self.samples.iter().enumerate() {
            let rho = self.rho.as_ref().map(|r| r[i].to_string()).unwrap_or_default();
            w.write_record([t.to_string(), v.to_string(), self.provenance.as_str().to_string(), rho])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `∫_1^t sqrt(lambda(tau)) / a(tau) dtau`.
pub fn cylinder_growth_integral<A, L>(a: A, lambda: L, t: f64, tol: f64) -> Result<f64>
where
    A: Fn(f64) -> f64,
    L: Fn(f64) -> f64,
{
    if !(t >= 1.0) {
        return Err(Error::InvalidArgument(format!("cylinder growth integral needs t >= 1, got {t}")));
    }
    adaptive_simpson(|s| lambda(s).sqrt() / a(s), 1.0, t, tol)
}

/// `∫_e^r alpha(y) / y dy`.
pub fn cone_growth_integral<F: Fn(f64) -> f64>(alpha: F, r: f64, tol: f64) -> Result<f64> {
    if !(r >= E) {
        return Err(Error::InvalidArgument(format!("cone growth integral needs r >= e, got {r}")));
    }
    log_integral(alpha, E, r, tol)
}

/// `C exp(∫_e^{r/2} alpha_1(t) / t dt)`.
pub fn huber_lower_bound<F: Fn(f64) -> f64>(alpha1: F, r: f64, c: f64, tol: f64) -> Result<f64> {
    if !(r >= 2.0 * E) {
        return Err(Error::InvalidArgument(format!("Huber bound needs r >= 2e, got {r}")));
    }
    Ok(c * log_integral(alpha1, E, 0.5 * r, tol)?.exp())
}

/// `∫_lo^hi f(y) / y dy`, integrated in `s = ln y` where the integrand of
/// slowly varying profiles is smooth.
fn log_integral<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    adaptive_simpson(|s| f(s.exp()), lo.ln(), hi.ln(), tol)
}

/// Lower bound `1 / M~(r)` on the harmonic measure of the cut sphere.
pub fn hm_lower_bound(m_tilde: f64) -> Result<f64> {
    if !(m_tilde >= 1.0) || !m_tilde.is_finite() {
        return Err(Error::InvalidArgument(format!("normalized maximum must be at least 1, got {m_tilde}")));
    }
    Ok(1.0 / m_tilde)
}

/// Relative discrepancy of a measured curve against a prediction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthComparison {
    pub t: Vec<f64>,
    pub predicted: Vec<f64>,
    pub measured: Vec<f64>,
    pub rho: Vec<f64>,
    /// Least-squares slope of `|rho|` against `ln t`.
    pub trend: f64,
}

impl GrowthComparison {
    pub fn max_abs_rho(&self) -> f64 {
        self.rho.iter().fold(0.0, |m, r| m.max(r.abs()))
    }

    /// The measured curve restricted to the overlap, with `rho` attached.
    pub fn measured_curve(&self) -> GrowthCurve {
        GrowthCurve {
            samples: self.t.iter().copied().zip(self.measured.iter().copied()).collect(),
            provenance: Provenance::PdeMeasured,
            rho: Some(self.rho.clone()),
        }
    }

    /// CSV `(t, predicted, measured, rho)`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "predicted", "measured", "rho"])?;
        for i in 0..self.t.len() {
            w.write_record([
                self.t[i].to_string(),
                self.predicted[i].to_string(),
                self.measured[i].to_string(),
                self.rho[i].to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `rho(t) = measured / predicted - 1` on the measured samples inside the
/// predicted range.
pub fn compare_growth(predicted: &GrowthCurve, measured: &GrowthCurve) -> Result<GrowthComparison> {
    let mut out = GrowthComparison { t: vec![], predicted: vec![], measured: vec![], rho: vec![], trend: 0.0 };
    for &(t, m) in &measured.samples {
        if let Some(p) = predicted.value_at(t) {
            if !(m > 0.0) || !(p > 0.0) {
                return Err(Error::InvalidArgument(format!("growth values must be positive, got {m} vs {p} at t = {t}")));
            }
            out.t.push(t);
            out.predicted.push(p);
            out.measured.push(m);
            out.rho.push(m / p - 1.0);
        }
    }
    if out.t.len() < 2 {
        return Err(Error::NoOverlap);
    }
    let lt: Vec<f64> = out.t.iter().map(|t| t.ln()).collect();
    let ar: Vec<f64> = out.rho.iter().map(|r| r.abs()).collect();
    out.trend = linear_fit(&lt, &ar).0;
    Ok(out)
}

/// Least-squares line `y = slope x + intercept`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    (slope, my - slope * mx)
}
