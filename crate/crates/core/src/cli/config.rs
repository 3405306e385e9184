use std::f64::consts::E;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::geometry::{ConeWindow, CylinderWindow, DomainSpec};
use crate::pde::{InletCap, OutletCap};
use crate::{Error, Result};

/// Which pipeline a config runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Experiment {
    /// Principal eigenvalue of one section (or spherical cap for cones).
    Eig,
    /// Cylinder-like or cone-like certification over `t_list`.
    Certify,
    /// Predicted growth from the formulas.
    Growth,
    /// PDE solve on the window and its measured growth.
    Solve,
    /// Walk-on-spheres harmonic measure and the reciprocal bound.
    Wos,
    /// Certify, eigenvalue profile, formula, PDE growth and comparison.
    VerifyAll,
}

/// Which certification to run; `Auto` picks cone-like for cones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertifyMode {
    Auto,
    CylinderLike,
    ConeLike,
}

fn d_t() -> f64 {
    1.0
}
fn d_h() -> f64 {
    1.0 / 64.0
}
fn d_h_unit() -> f64 {
    1.0 / 32.0
}
fn d_t_list() -> Vec<f64> {
    vec![10.0, 100.0, 1e3, 1e4]
}
fn d_mode() -> CertifyMode {
    CertifyMode::Auto
}
fn d_t_min() -> f64 {
    25.0
}
fn d_t_max() -> f64 {
    400.0
}
fn d_pde_h() -> f64 {
    0.2
}
fn d_inlet() -> InletCap {
    InletCap::Zero
}
fn d_outlet() -> OutletCap {
    OutletCap::One
}
fn d_samples() -> usize {
    61
}
fn d_trim() -> f64 {
    crate::pde::DEFAULT_TRIM
}
fn d_tol() -> f64 {
    crate::asymptotics::DEFAULT_TOL
}
fn d_x0() -> [f64; 3] {
    [0.0, 0.0, 1.0]
}
fn d_r_cut() -> f64 {
    8.0
}
fn d_paths() -> usize {
    100_000
}
fn d_huber() -> f64 {
    1.0
}

/// JSON experiment description. Every field but `experiment` and `domain`
/// has a default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub domain: DomainSpec,
    /// Section height (`Eig`).
    #[serde(default = "d_t")]
    pub t: f64,
    /// Eigen grid spacing (`Eig`), absolute.
    #[serde(default = "d_h")]
    pub h: f64,
    /// Eigen grid spacing relative to the section scale (profiles and
    /// certification).
    #[serde(default = "d_h_unit")]
    pub h_unit: f64,
    #[serde(default = "d_t_list")]
    pub t_list: Vec<f64>,
    #[serde(default = "d_mode")]
    pub certify_mode: CertifyMode,
    #[serde(default)]
    pub cylinder_window: CylinderWindow,
    #[serde(default)]
    pub cone_window: ConeWindow,
    /// PDE window (axial positions, or radii for cones).
    #[serde(default = "d_t_min")]
    pub t_min: f64,
    #[serde(default = "d_t_max")]
    pub t_max: f64,
    /// PDE grid spacing (in `ln r` and `theta` for cones).
    #[serde(default = "d_pde_h")]
    pub pde_h: f64,
    #[serde(default = "d_inlet")]
    pub inlet: InletCap,
    #[serde(default = "d_outlet")]
    pub outlet: OutletCap,
    /// Number of growth samples across the window.
    #[serde(default = "d_samples")]
    pub samples: usize,
    /// Fraction of the window dropped at each end of measured growth.
    #[serde(default = "d_trim")]
    pub trim: f64,
    /// Absolute quadrature tolerance.
    #[serde(default = "d_tol")]
    pub tol: f64,
    #[serde(default = "d_x0")]
    pub x0: [f64; 3],
    #[serde(default = "d_r_cut")]
    pub r_cut: f64,
    #[serde(default = "d_paths")]
    pub n_paths: usize,
    /// Defaults to `1e-3 * r_cut`.
    #[serde(default)]
    pub eps_shell: Option<f64>,
    /// `M~(r_cut)`; computed from a PDE solve when absent.
    #[serde(default)]
    pub m_tilde: Option<f64>,
    #[serde(default)]
    pub seed: u64,
    /// Constant `C` of the Huber lower bound.
    #[serde(default = "d_huber")]
    pub huber_c: f64,
    /// Output prefix; the command line `--out` takes precedence.
    #[serde(default)]
    pub output: Option<String>,
}

fn invalid(path: &str, message: impl Into<String>) -> Error {
    Error::ConfigInvalid { path: path.to_string(), message: message.into() }
}

fn positive(path: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(path, format!("must be positive and finite, got {v}")))
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            invalid(&path, e.into_inner().to_string())
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// Checks every parameter the chosen experiment uses.
    pub fn validate(&self) -> Result<()> {
        self.domain.validate().map_err(|e| invalid("domain", e.to_string()))?;
        let cone = self.domain.is_cone();
        match self.experiment {
            Experiment::Eig => {
                positive("h", self.h)?;
                if !cone {
                    positive("t", self.t)?;
                }
            }
            Experiment::Certify => self.validate_certify()?,
            Experiment::Growth => {
                self.validate_window()?;
                self.validate_profile()?;
            }
            Experiment::Solve => self.validate_window()?,
            Experiment::Wos => self.validate_wos()?,
            Experiment::VerifyAll => {
                self.validate_certify()?;
                self.validate_window()?;
                self.validate_profile()?;
            }
        }
        Ok(())
    }

    fn validate_certify(&self) -> Result<()> {
        positive("h_unit", self.h_unit)?;
        if self.t_list.len() < 4 {
            return Err(invalid("t_list", "needs at least four scales"));
        }
        for (i, t) in self.t_list.iter().enumerate() {
            positive(&format!("t_list[{i}]"), *t)?;
        }
        if !self.t_list.windows(2).all(|w| w[1] > w[0]) {
            return Err(invalid("t_list", "must be strictly increasing"));
        }
        if self.t_list[self.t_list.len() - 1] / self.t_list[0] < 100.0 - 1e-9 {
            return Err(invalid("t_list", "must span at least two decades"));
        }
        positive("cylinder_window.half_length", self.cylinder_window.half_length)?;
        positive("cylinder_window.radius", self.cylinder_window.radius)?;
        positive("cone_window.r_min", self.cone_window.r_min)?;
        if !(self.cone_window.r_max > self.cone_window.r_min) {
            return Err(invalid("cone_window.r_max", "must exceed r_min"));
        }
        Ok(())
    }

    fn validate_window(&self) -> Result<()> {
        positive("pde_h", self.pde_h)?;
        if !(self.t_max > self.t_min) || !self.t_max.is_finite() {
            return Err(invalid("t_max", "must exceed t_min"));
        }
        if (self.domain.is_cone() || self.experiment != Experiment::Solve) && !(self.t_min > 0.0) {
            return Err(invalid("t_min", "must be positive"));
        }
        if self.samples < 2 {
            return Err(invalid("samples", "need at least two samples"));
        }
        if !(0.0..0.5).contains(&self.trim) {
            return Err(invalid("trim", "must lie in [0, 0.5)"));
        }
        positive("tol", self.tol)?;
        positive("huber_c", self.huber_c)?;
        Ok(())
    }

    fn validate_profile(&self) -> Result<()> {
        positive("h_unit", self.h_unit)?;
        if self.domain.is_cone() {
            if self.t_max < 2.0 * E {
                return Err(invalid("t_max", "cone growth formulas need t_max >= 2e"));
            }
        } else if self.t_max < 1.0 {
            return Err(invalid("t_max", "cylinder growth formula needs t_max >= 1"));
        }
        Ok(())
    }

    fn validate_wos(&self) -> Result<()> {
        positive("r_cut", self.r_cut)?;
        let r0 = self.x0.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(r0 < self.r_cut) {
            return Err(invalid("x0", "must lie inside the cut sphere"));
        }
        if !self.domain.contains(self.x0) {
            return Err(invalid("x0", "must lie inside the domain"));
        }
        if self.n_paths == 0 {
            return Err(invalid("n_paths", "must be positive"));
        }
        if let Some(e) = self.eps_shell {
            positive("eps_shell", e)?;
        }
        if let Some(m) = self.m_tilde {
            if !(m >= 1.0) {
                return Err(invalid("m_tilde", "must be at least 1"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_gets_defaults() {
        let c = ExperimentConfig::from_json(r#"{"experiment":"Eig","domain":{"kind":"StraightCylinder"}}"#).unwrap();
        assert_eq!(c.h, 1.0 / 64.0);
        assert_eq!(c.huber_c, 1.0);
        c.validate().unwrap();
    }

    #[test]
    fn errors_carry_field_paths() {
        let e = ExperimentConfig::from_json(r#"{"experiment":"Eig","domain":{"kind":"Cube"}}"#).unwrap_err();
        assert!(matches!(e, Error::ConfigInvalid { ref path, .. } if path == "domain.kind"), "{e}");
        let c = ExperimentConfig::from_json(r#"{"experiment":"Certify","domain":{"kind":"Paraboloid"},"t_list":[1,2,3,4]}"#)
            .unwrap();
        assert!(matches!(c.validate(), Err(Error::ConfigInvalid { ref path, .. }) if path == "t_list"));
        let c = ExperimentConfig::from_json(r#"{"experiment":"Wos","domain":{"kind":"LipschitzCone","cap_angle":1.5707963267948966},"x0":[0,0,-1]}"#)
            .unwrap();
        assert!(matches!(c.validate(), Err(Error::ConfigInvalid { ref path, .. }) if path == "x0"));
    }
}
