use std::f64::consts::PI;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use super::rescale::{cap_at, cone_window_radii, rescale_conelike_against};
use super::{rescale_cylinderlike, ConeWindow, CylinderWindow, DomainSpec};
use crate::eigensolve::{beltrami_lambda1, characteristic_constant, lambda_profile, spherical_section_alpha};
use crate::{Error, Result};

/// Which geometric condition a report certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertificationMode {
    CylinderLike,
    ConeLike,
}

/// Numerical resolution used by the certifiers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifyOptions {
    /// Grid spacing of eigenvalue solves, relative to the section scale.
    pub h_unit: f64,
    /// Approximate size of each Hausdorff point cloud.
    pub n_samples: usize,
    /// Grid cells across non-cap spherical sections.
    pub fd_cells: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self { h_unit: 1.0 / 32.0, n_samples: 3000, fd_cells: 48 }
    }
}

/// One scale of a certification table. Columns that do not apply to the
/// mode (or are undefined for the domain) are `None`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificationRow {
    pub t: f64,
    pub d_h: f64,
    pub a_prime: Option<f64>,
    pub a_over_t: Option<f64>,
    pub lambda: Option<f64>,
    pub alpha: Option<f64>,
    pub alpha1: Option<f64>,
}

/// Per-scale table plus the flag of every checked condition.
#[derive(Debug, Clone, Serialize)]
pub struct CertificationReport {
    pub mode: CertificationMode,
    pub rows: Vec<CertificationRow>,
    pub flags: Vec<(String, bool)>,
    /// Bounds `[lambda_0, lambda_1]` of the rescaled eigenvalue.
    pub lambda_bounds: Option<[f64; 2]>,
    /// Set when the window was shrunk to fit inside the rescaled slab.
    pub window_clipped: bool,
    pub pass: bool,
}

impl CertificationReport {
    fn finish(mode: CertificationMode, rows: Vec<CertificationRow>, flags: Vec<(String, bool)>) -> Self {
        let pass = flags.iter().all(|(_, ok)| *ok);
        Self { mode, rows, flags, lambda_bounds: None, window_clipped: false, pass }
    }

    pub fn verdict(&self) -> &'static str {
        if self.pass {
            "PASS"
        } else {
            "FAIL"
        }
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "d_H", "a_prime", "a_over_t", "lambda", "alpha", "alpha1"])?;
        let cell = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        for r in &self.rows {
            w.write_record([
                r.t.to_string(),
                r.d_h.to_string(),
                cell(r.a_prime),
                cell(r.a_over_t),
                cell(r.lambda),
                cell(r.alpha),
                cell(r.alpha1),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn check_scales(t_list: &[f64]) -> Result<()> {
    if t_list.len() < 4 {
        return Err(Error::InvalidArgument("need at least four scales".into()));
    }
    if !t_list.windows(2).all(|w| w[0] > 0.0 && w[1] > w[0]) {
        return Err(Error::InvalidArgument("scales must be positive and increasing".into()));
    }
    if t_list[t_list.len() - 1] / t_list[0] < 100.0 - 1e-9 {
        return Err(Error::InvalidArgument("scales must span at least two decades".into()));
    }
    Ok(())
}

/// Hausdorff distances tend to zero: each is negligible, or they shrink at
/// least by half per decade of scale.
fn converging(ts: &[f64], d: &[f64]) -> bool {
    const NEGLIGIBLE: f64 = 1e-12;
    if d.iter().all(|&x| x <= NEGLIGIBLE) {
        return true;
    }
    (1..d.len()).all(|i| {
        d[i] <= NEGLIGIBLE || d[i] <= d[i - 1] * 0.5f64.powf((ts[i] / ts[i - 1]).log10()) * (1.0 + 1e-9)
    })
}

/// Checks that a cylinder-like domain has shrinking Hausdorff distance to
/// its limiting cylinder, decreasing `a'`, decreasing `a/t` and bounded
/// rescaled eigenvalue.
pub fn certify_cylinderlike(domain: &DomainSpec, t_list: &[f64], window: CylinderWindow) -> Result<CertificationReport> {
    certify_cylinderlike_with(domain, t_list, window, CertifyOptions::default())
}

/// [`certify_cylinderlike`] with explicit resolution.
pub fn certify_cylinderlike_with(
    domain: &DomainSpec,
    t_list: &[f64],
    window: CylinderWindow,
    opts: CertifyOptions,
) -> Result<CertificationReport> {
    domain.validate()?;
    check_scales(t_list)?;
    let mut clipped = false;
    let rows: Vec<(CertificationRow, bool)> = t_list
        .par_iter()
        .map(|&t| {
            let a = domain
                .profile(t)
                .ok_or_else(|| Error::Unsupported(format!("{:?} has unbounded sections", domain.kind)))?;
            let slab = t / (2.0 * a);
            let mut w = window;
            let clip = w.half_length >= slab;
            if clip {
                w.half_length = 0.9 * slab;
            }
            let d_h = rescale_cylinderlike(domain, t, w, opts.n_samples)?.hausdorff()?;
            Ok((
                CertificationRow {
                    t,
                    d_h,
                    a_prime: domain.profile_slope(t),
                    a_over_t: Some(a / t),
                    lambda: None,
                    alpha: None,
                    alpha1: None,
                },
                clip,
            ))
        })
        .collect::<Result<_>>()?;
    let prof = lambda_profile(domain, t_list, opts.h_unit)?;
    let mut rows: Vec<CertificationRow> = rows
        .into_iter()
        .zip(&prof.lambda_unit)
        .map(|((mut r, c), &l)| {
            clipped |= c;
            r.lambda = Some(l);
            r
        })
        .collect();
    rows.sort_by(|a, b| a.t.total_cmp(&b.t));

    let ts: Vec<f64> = rows.iter().map(|r| r.t).collect();
    let dh: Vec<f64> = rows.iter().map(|r| r.d_h).collect();
    let ap: Vec<f64> = rows.iter().map(|r| r.a_prime.unwrap_or(f64::NAN)).collect();
    let at: Vec<f64> = rows.iter().map(|r| r.a_over_t.unwrap_or(f64::NAN)).collect();
    let slope_ok = ap.windows(2).all(|w| w[1] <= w[0])
        && (ap.iter().all(|&v| v == 0.0) || ap[ap.len() - 1] < ap[0]);
    // Enclosing cylinders over 0.9 and 1.1 times the unit cross-shape.
    let l_ref = prof.lambda_unit[0];
    let bounds = [l_ref / 1.21, l_ref / 0.81];
    let lambda_ok = rows.iter().all(|r| r.lambda.is_some_and(|l| l >= bounds[0] && l <= bounds[1]));
    let flags = vec![
        ("hausdorff_to_zero".to_string(), converging(&ts, &dh)),
        ("a_prime_decreasing".to_string(), slope_ok),
        ("a_over_t_decreasing".to_string(), at.windows(2).all(|w| w[1] < w[0])),
        ("lambda_bounded".to_string(), lambda_ok),
    ];
    let mut report = CertificationReport::finish(CertificationMode::CylinderLike, rows, flags);
    report.lambda_bounds = Some(bounds);
    report.window_clipped = clipped;
    Ok(report)
}

/// Checks that a cone-like domain has shrinking Hausdorff distance to a
/// fitted cone, bounded characteristic constants and `alpha - alpha_1 -> 0`.
pub fn certify_conelike(domain: &DomainSpec, t_list: &[f64], window: ConeWindow) -> Result<CertificationReport> {
    certify_conelike_with(domain, t_list, window, CertifyOptions::default())
}

/// [`certify_conelike`] with explicit resolution.
pub fn certify_conelike_with(
    domain: &DomainSpec,
    t_list: &[f64],
    window: ConeWindow,
    opts: CertifyOptions,
) -> Result<CertificationReport> {
    domain.validate()?;
    check_scales(t_list)?;
    let rows: Vec<CertificationRow> = t_list
        .par_iter()
        .map(|&t| {
            // Fitted cone: mean cap angle of the rescaled domain over the shell.
            let radii = cone_window_radii(window, 16);
            let mut fitted = 0.0;
            for &r in &radii {
                fitted += cap_at(domain, t * r)?.0;
            }
            fitted /= radii.len() as f64;
            let d_h = rescale_conelike_against(domain, t, window, opts.n_samples, fitted)?.hausdorff()?;
            let alpha = if fitted > 0.0 && fitted < PI {
                Some(characteristic_constant(beltrami_lambda1(fitted, 64)?.lambda, domain.dim)?.alpha)
            } else {
                Some(0.0)
            };
            let c1 = spherical_section_alpha(domain, t, opts.fd_cells)?;
            Ok(CertificationRow {
                t,
                d_h,
                a_prime: domain.profile_slope(t),
                a_over_t: domain.profile(t).map(|a| a / t),
                lambda: Some(c1.map_or(0.0, |c| c.lambda_source)),
                alpha,
                alpha1: Some(c1.map_or(0.0, |c| c.alpha)),
            })
        })
        .collect::<Result<_>>()?;
    let ts: Vec<f64> = rows.iter().map(|r| r.t).collect();
    let dh: Vec<f64> = rows.iter().map(|r| r.d_h).collect();
    let all: Vec<f64> = rows.iter().flat_map(|r| [r.alpha.unwrap(), r.alpha1.unwrap()]).collect();
    let lo = all.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = all.iter().copied().fold(0.0, f64::max);
    let bounded = lo > 0.0 && hi.is_finite() && hi / lo <= 2.0;
    let last = &rows[rows.len() - 1];
    let gap_ok = (last.alpha.unwrap() - last.alpha1.unwrap()).abs() < 0.02;
    let flags = vec![
        ("hausdorff_to_zero".to_string(), converging(&ts, &dh)),
        ("alpha_bounded".to_string(), bounded),
        ("alpha_gap_to_zero".to_string(), gap_ok),
    ];
    Ok(CertificationReport::finish(CertificationMode::ConeLike, rows, flags))
}
