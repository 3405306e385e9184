use std::f64::consts::E;
use std::fs;
use std::path::PathBuf;

use serde_json::json;

use super::config::{CertifyMode, Experiment, ExperimentConfig};
use super::TOOL;
use crate::asymptotics::{
    compare_growth, cone_growth_integral, cylinder_growth_integral, huber_lower_bound, GrowthComparison, GrowthCurve,
    Provenance,
};
use crate::eigensolve::{beltrami_lambda1, characteristic_constant, dirichlet_lambda1, lambda_profile, spherical_section_alpha};
use crate::geometry::{certify_conelike_with, certify_cylinderlike_with, section_at, CertificationReport, CertifyOptions};
use crate::interp::MonotoneCubic;
use crate::measure::{reference_m_tilde, verify_reciprocal_bound};
use crate::pde::{growth_profile_trimmed, solve_harmonic, HarmonicField};
use crate::{Error, Result};

/// Result of one experiment.
#[derive(Debug, Clone)]
pub struct Outcome {
    /// One line per experiment stage.
    pub summary: Vec<String>,
    /// False when a certification or bound check failed.
    pub pass: bool,
    pub files: Vec<PathBuf>,
}

struct Sink {
    prefix: String,
    meta: String,
    files: Vec<PathBuf>,
}

impl Sink {
    fn new(cfg: &ExperimentConfig) -> Result<Self> {
        let prefix = cfg.output.clone().unwrap_or_else(|| "hgrowth".to_string());
        let meta = serde_json::to_string(&json!({ "config": cfg, "tool": TOOL }))?;
        Ok(Self { prefix, meta, files: vec![] })
    }

    fn path(&self, kind: &str, ext: &str) -> PathBuf {
        PathBuf::from(format!("{}.{kind}.{ext}", self.prefix))
    }

    fn csv<F: FnOnce(&mut Vec<u8>) -> Result<()>>(&mut self, kind: &str, body: F) -> Result<()> {
        let mut buf = format!("# {}\n", self.meta).into_bytes();
        body(&mut buf)?;
        let path = self.path(kind, "csv");
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        fs::write(&path, buf)?;
        self.files.push(path);
        Ok(())
    }

    fn json(&mut self, kind: &str, mut value: serde_json::Value) -> Result<()> {
        value["_meta"] = serde_json::from_str(&self.meta)?;
        let path = self.path(kind, "json");
        fs::write(&path, serde_json::to_string_pretty(&value)? + "\n")?;
        self.files.push(path);
        Ok(())
    }
}

/// Validates and runs one experiment, writing its artifacts.
pub fn run(cfg: &ExperimentConfig) -> Result<Outcome> {
    cfg.validate()?;
    let mut sink = Sink::new(cfg)?;
    let mut summary = Vec::new();
    let pass = match cfg.experiment {
        Experiment::Eig => eig(cfg, &mut sink, &mut summary)?,
        Experiment::Certify => certify(cfg, &mut sink, &mut summary)?.pass,
        Experiment::Growth => {
            predicted(cfg, &mut sink, &mut summary)?;
            true
        }
        Experiment::Solve => {
            measured(cfg, &mut sink, &mut summary)?;
            true
        }
        Experiment::Wos => wos(cfg, &mut sink, &mut summary)?,
        Experiment::VerifyAll => verify_all(cfg, &mut sink, &mut summary)?,
    };
    Ok(Outcome { summary, pass, files: sink.files })
}

fn eig(cfg: &ExperimentConfig, sink: &mut Sink, summary: &mut Vec<String>) -> Result<bool> {
    let d = &cfg.domain;
    let (res, nodes) = if d.is_cone() {
        let n = ((d.cap_angle / cfg.h).round() as usize).max(2) + 1;
        (beltrami_lambda1(d.cap_angle, n)?, n)
    } else {
        let mask = section_at(d, cfg.t, cfg.h)?;
        let n = mask.len();
        (dirichlet_lambda1(&mask)?, n)
    };
    let alpha = if d.is_cone() { Some(characteristic_constant(res.lambda, d.dim)?.alpha) } else { None };
    sink.csv("eig", |buf| {
        let mut w = csv::Writer::from_writer(buf);
        w.write_record(["lambda", "residual", "h", "nodes", "alpha"])?;
        w.write_record([
            res.lambda.to_string(),
            res.residual.to_string(),
            res.h.to_string(),
            nodes.to_string(),
            alpha.map(|a| a.to_string()).unwrap_or_default(),
        ])?;
        w.flush()?;
        Ok(())
    })?;
    sink.csv("eigenfunction", |buf| res.write_csv(buf))?;
    summary.push(format!("Eig: lambda = {:.8} (h = {}, {} nodes, residual {:.2e})", res.lambda, res.h, nodes, res.residual));
    Ok(true)
}

fn certify(cfg: &ExperimentConfig, sink: &mut Sink, summary: &mut Vec<String>) -> Result<CertificationReport> {
    let opts = CertifyOptions { h_unit: cfg.h_unit, ..CertifyOptions::default() };
    let cone = match cfg.certify_mode {
        CertifyMode::Auto => cfg.domain.is_cone(),
        CertifyMode::ConeLike => true,
        CertifyMode::CylinderLike => false,
    };
    let report = if cone {
        certify_conelike_with(&cfg.domain, &cfg.t_list, cfg.cone_window, opts)?
    } else {
        certify_cylinderlike_with(&cfg.domain, &cfg.t_list, cfg.cylinder_window, opts)?
    };
    sink.csv("certify", |buf| report.write_csv(buf))?;
    let flags: Vec<String> = report.flags.iter().map(|(n, ok)| format!("{n}={}", if *ok { "ok" } else { "fail" })).collect();
    let clip = if report.window_clipped { " (window clipped)" } else { "" };
    summary.push(format!("Certify {:?}: {}{clip} [{}]", report.mode, report.verdict(), flags.join(", ")));
    Ok(report)
}

fn log_knots(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|k| (a + (b - a) * k as f64 / (n - 1) as f64).exp()).collect()
}

fn sample_points(lo: f64, hi: f64, n: usize, geometric: bool) -> Vec<f64> {
    if geometric {
        log_knots(lo, hi, n)
    } else {
        (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
    }
}

/// Predicted `log M` at the sample points of the window (and at `t_max`).
fn predicted(cfg: &ExperimentConfig, sink: &mut Sink, summary: &mut Vec<String>) -> Result<GrowthCurve> {
    let d = &cfg.domain;
    if d.is_cone() {
        let knots = log_knots(E, cfg.t_max, 9);
        let alphas = knots
            .iter()
            .map(|&r| spherical_section_alpha(d, r, 48)?.map(|c| c.alpha).ok_or(Error::Unsupported("full-sphere sections".into())))
            .collect::<Result<Vec<f64>>>()?;
        let interp = MonotoneCubic::new(knots.iter().map(|r| r.ln()).collect(), alphas.clone())?;
        let alpha = |r: f64| interp.eval(r.ln());
        let lo = cfg.t_min.max(E);
        let rs = sample_points(lo, cfg.t_max, cfg.samples, true);
        let curve = GrowthCurve::from_fn(&rs, Provenance::FormulaCone, |r| cone_growth_integral(alpha, r, cfg.tol))?;
        let lo_h = cfg.t_min.max(2.0 * E);
        let rh = sample_points(lo_h, cfg.t_max, cfg.samples, true);
        let huber = GrowthCurve::from_fn(&rh, Provenance::HuberBound, |r| {
            Ok(huber_lower_bound(alpha, r, cfg.huber_c, cfg.tol)?.ln())
        })?;
        sink.csv("alpha", |buf| {
            let mut w = csv::Writer::from_writer(buf);
            w.write_record(["r", "alpha1"])?;
            for (r, a) in knots.iter().zip(&alphas) {
                w.write_record([r.to_string(), a.to_string()])?;
            }
            w.flush()?;
            Ok(())
        })?;
        sink.csv("growth", |buf| curve.write_csv(buf))?;
        sink.csv("huber", |buf| huber.write_csv(buf))?;
        let (r1, f1) = *curve.samples.last().expect("nonempty");
        summary.push(format!("Growth (cone): log M~({r1}) ~ {f1:.6}, alpha in [{:.6}, {:.6}]", min(&alphas), max(&alphas)));
        Ok(curve)
    } else {
        let knots = log_knots(1.0, cfg.t_max, 9);
        let prof = lambda_profile(d, &knots, cfg.h_unit)?;
        let a = |t: f64| d.profile(t).unwrap_or(f64::NAN);
        let lam = |t: f64| prof.eval_unit(t);
        let lo = cfg.t_min.max(1.0);
        let ts = sample_points(lo, cfg.t_max, cfg.samples, false);
        let curve = GrowthCurve::from_fn(&ts, Provenance::FormulaCylinder, |t| cylinder_growth_integral(a, lam, t, cfg.tol))?;
        sink.csv("lambda", |buf| prof.write_csv(buf))?;
        sink.csv("growth", |buf| curve.write_csv(buf))?;
        let (t1, f1) = *curve.samples.last().expect("nonempty");
        summary.push(format!(
            "Growth (cylinder): log M({t1}) ~ {f1:.6}, unit-section lambda in [{:.6}, {:.6}]",
            min(&prof.lambda_unit),
            max(&prof.lambda_unit)
        ));
        Ok(curve)
    }
}

fn min(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::INFINITY, f64::min)
}

fn max(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// PDE solve and measured `log M` on the trimmed window.
fn measured(cfg: &ExperimentConfig, sink: &mut Sink, summary: &mut Vec<String>) -> Result<(HarmonicField, GrowthCurve)> {
    let d = &cfg.domain;
    let field = solve_harmonic(d, cfg.t_min, cfg.t_max, cfg.pde_h, cfg.inlet, cfg.outlet)?;
    let ts = sample_points(cfg.t_min, cfg.t_max, cfg.samples, d.is_cone());
    let curve = growth_profile_trimmed(&field, &ts, cfg.trim)?;
    sink.csv("field", |buf| field.write_slice_csv(buf))?;
    sink.csv("measured", |buf| curve.write_csv(buf))?;
    summary.push(format!(
        "Solve: {} unknowns, residual {:.2e}, maximum principle {}",
        field.unknowns(),
        field.residual,
        if field.max_principle_ok { "ok" } else { "VIOLATED" }
    ));
    Ok((field, curve))
}

fn wos(cfg: &ExperimentConfig, sink: &mut Sink, summary: &mut Vec<String>) -> Result<bool> {
    let m_tilde = match cfg.m_tilde {
        Some(m) => m,
        None => reference_m_tilde(&cfg.domain, cfg.x0, cfg.r_cut, cfg.pde_h)?,
    };
    let eps = cfg.eps_shell.unwrap_or(1e-3 * cfg.r_cut);
    let report = if eps == 1e-3 * cfg.r_cut {
        verify_reciprocal_bound(&cfg.domain, cfg.x0, cfg.r_cut, m_tilde, cfg.n_paths, cfg.seed)?
    } else {
        let est = crate::measure::wos_exit_probability(&cfg.domain, cfg.x0, cfg.r_cut, cfg.n_paths, eps, cfg.seed)?;
        let bound = crate::asymptotics::hm_lower_bound(m_tilde)?;
        crate::measure::ReciprocalBoundReport {
            p_hat: est.p_hat,
            stderr: est.stderr,
            n_paths: est.n_paths,
            bound,
            pass: est.p_hat + 3.0 * est.stderr >= bound,
            seed: est.seed,
            mean_steps: est.mean_steps,
        }
    };
    let mut value = serde_json::to_value(report)?;
    value["m_tilde"] = json!(m_tilde);
    sink.json("wos", value)?;
    summary.push(format!(
        "Wos: p_hat = {:.6} +- {:.6}, bound 1/M~ = {:.6}: {}",
        report.p_hat,
        report.stderr,
        report.bound,
        if report.pass { "PASS" } else { "FAIL" }
    ));
    Ok(report.pass)
}

fn verify_all(cfg: &ExperimentConfig, sink: &mut Sink, summary: &mut Vec<String>) -> Result<bool> {
    let cert = certify(cfg, sink, summary)?;
    let pred = predicted(cfg, sink, summary)?;
    let (field, meas) = measured(cfg, sink, summary)?;
    // Fix the free normalization of u by matching the prediction at the
    // outer end of the window.
    let d = &cfg.domain;
    let top = if d.is_cone() { field.max_on_sphere(cfg.t_max)? } else { field.max_on_section(cfg.t_max)? };
    let pred_top = pred.samples.last().expect("nonempty").1;
    let anchored = meas.shifted(pred_top - top.ln());
    let cmp: GrowthComparison = compare_growth(&pred, &anchored)?;
    sink.csv("rho", |buf| cmp.write_csv(buf))?;
    summary.push(format!("Compare: max |rho| = {:.4}, trend d|rho|/dlog t = {:.4}", cmp.max_abs_rho(), cmp.trend));
    Ok(cert.pass)
}

