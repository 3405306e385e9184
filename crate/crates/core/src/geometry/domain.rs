use std::f64::consts::{E, FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The parametric domain families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DomainKind {
    /// `{x > 0, |Y| < A x^alpha}`.
    Paraboloid,
    /// `{x > 0, |Y| < a(x)}` with the logarithmic horn profile
    /// `a(x) = A (e^2 + x) / ln(e^2 + x)`.
    Horn,
    /// `R x {|Y| < A}`.
    StraightCylinder,
    /// Circular cone of half-angle `cap_angle` about the positive z-axis.
    LipschitzCone,
    /// `{x > 0, (y / a)^2 + (z / (b a))^2 < 1}` with `a = A x^alpha`.
    EllipticParaboloid,
}

/// Parametric description of an unbounded domain in `R^3`.
///
/// Cylinder-like families use the first coordinate as their axis and the
/// last two as the transverse variable `Y`; cones open around the positive
/// z-axis so that the half-space cone is `{z > 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DomainSpec {
    pub kind: DomainKind,
    #[serde(default = "default_dim")]
    pub dim: usize,
    #[serde(rename = "A", default = "one")]
    pub scale: f64,
    #[serde(default = "half")]
    pub alpha: f64,
    #[serde(default = "one")]
    pub ellipse_b: f64,
    #[serde(default = "quarter_pi")]
    pub cap_angle: f64,
}

fn default_dim() -> usize {
    3
}
fn one() -> f64 {
    1.0
}
fn half() -> f64 {
    0.5
}
fn quarter_pi() -> f64 {
    PI / 4.0
}

/// Shape of the intersection of a domain with a sphere `|xi| = R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SphericalSection {
    /// Polar cap of the given half-angle about the domain axis; `mirrored`
    /// adds the congruent cap about the opposite pole.
    Cap { angle: f64, mirrored: bool },
    /// The whole sphere lies in the domain.
    Full,
    /// Not a union of polar caps (elliptic sections).
    Other,
}

impl DomainSpec {
    fn base(kind: DomainKind) -> Self {
        Self { kind, dim: 3, scale: 1.0, alpha: 0.5, ellipse_b: 1.0, cap_angle: quarter_pi() }
    }

    pub fn paraboloid(a: f64, alpha: f64) -> Self {
        Self { scale: a, alpha, ..Self::base(DomainKind::Paraboloid) }
    }

    pub fn horn(a: f64) -> Self {
        Self { scale: a, ..Self::base(DomainKind::Horn) }
    }

    pub fn straight_cylinder(radius: f64) -> Self {
        Self { scale: radius, ..Self::base(DomainKind::StraightCylinder) }
    }

    pub fn cone(cap_angle: f64) -> Self {
        Self { cap_angle, ..Self::base(DomainKind::LipschitzCone) }
    }

    pub fn elliptic_paraboloid(a: f64, alpha: f64, b: f64) -> Self {
        Self { scale: a, alpha, ellipse_b: b, ..Self::base(DomainKind::EllipticParaboloid) }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.to_string()));
        if self.dim < 3 {
            return bad("dim must be at least 3");
        }
        if self.dim != 3 {
            return Err(Error::Unsupported("solvers are specialised to dim = 3".into()));
        }
        match self.kind {
            DomainKind::LipschitzCone => {
                if !(self.cap_angle > 0.0 && self.cap_angle < PI) {
                    return Err(Error::InvalidCap(self.cap_angle));
                }
            }
            _ => {
                if !(self.scale > 0.0 && self.scale.is_finite()) {
                    return bad("A must be positive");
                }
            }
        }
        if matches!(self.kind, DomainKind::Paraboloid | DomainKind::EllipticParaboloid)
            && !(self.alpha > 0.0 && self.alpha < 1.0)
        {
            return bad("alpha must lie in (0, 1)");
        }
        if self.kind == DomainKind::EllipticParaboloid && !(self.ellipse_b > 0.0 && self.ellipse_b <= 1.0) {
            return bad("ellipse_b must lie in (0, 1]");
        }
        Ok(())
    }

    pub fn is_cone(&self) -> bool {
        self.kind == DomainKind::LipschitzCone
    }

    /// Index of the coordinate the domain opens along.
    pub fn axis(&self) -> usize {
        if self.is_cone() {
            2
        } else {
            0
        }
    }

    /// Whether the domain is invariant under rotations about its axis.
    pub fn is_rotational(&self) -> bool {
        self.kind != DomainKind::EllipticParaboloid || self.ellipse_b == 1.0
    }

    /// Smallest semi-axis of the unit cross-section.
    pub fn min_semi_axis(&self) -> f64 {
        match self.kind {
            DomainKind::EllipticParaboloid => self.ellipse_b,
            _ => 1.0,
        }
    }

    /// Section scale `a(t)`: the cross-section at axial position `t` is
    /// `a(t)` times the unit cross-shape. `None` when the section is
    /// unbounded (cones of half-angle at least pi/2) or empty.
    pub fn profile(&self, t: f64) -> Option<f64> {
        match self.kind {
            DomainKind::Paraboloid | DomainKind::EllipticParaboloid => {
                (t > 0.0).then(|| self.scale * t.powf(self.alpha))
            }
            DomainKind::Horn => (t >= 0.0).then(|| {
                let s = E * E + t;
                self.scale * s / s.ln()
            }),
            DomainKind::StraightCylinder => Some(self.scale),
            DomainKind::LipschitzCone => {
                (self.cap_angle < FRAC_PI_2 && t > 0.0).then(|| t * self.cap_angle.tan())
            }
        }
    }

    /// Derivative `a'(t)` of the section scale.
    pub fn profile_slope(&self, t: f64) -> Option<f64> {
        match self.kind {
            DomainKind::Paraboloid | DomainKind::EllipticParaboloid => {
                (t > 0.0).then(|| self.scale * self.alpha * t.powf(self.alpha - 1.0))
            }
            DomainKind::Horn => (t >= 0.0).then(|| {
                let l = (E * E + t).ln();
                self.scale * (l - 1.0) / (l * l)
            }),
            DomainKind::StraightCylinder => Some(0.0),
            DomainKind::LipschitzCone => (self.cap_angle < FRAC_PI_2).then(|| self.cap_angle.tan()),
        }
    }

    /// Point of the unit cross-shape boundary at parameter `phi`.
    pub fn cross_point(&self, phi: f64) -> [f64; 2] {
        let b = if self.kind == DomainKind::EllipticParaboloid { self.ellipse_b } else { 1.0 };
        [phi.cos(), b * phi.sin()]
    }

    /// Whether `y` lies in the unit cross-shape (open).
    pub fn in_unit_cross(&self, y: [f64; 2]) -> bool {
        let b = if self.kind == DomainKind::EllipticParaboloid { self.ellipse_b } else { 1.0 };
        y[0] * y[0] + (y[1] / b) * (y[1] / b) < 1.0
    }

    /// Splits a point into its axial coordinate and transverse part.
    pub fn split(&self, p: [f64; 3]) -> (f64, [f64; 2]) {
        if self.is_cone() {
            (p[2], [p[0], p[1]])
        } else {
            (p[0], [p[1], p[2]])
        }
    }

    /// Inverse of [`DomainSpec::split`].
    pub fn join(&self, axial: f64, y: [f64; 2]) -> [f64; 3] {
        if self.is_cone() {
            [y[0], y[1], axial]
        } else {
            [axial, y[0], y[1]]
        }
    }

    /// Exact membership test for the open domain.
    pub fn contains(&self, p: [f64; 3]) -> bool {
        let (x, y) = self.split(p);
        match self.kind {
            DomainKind::LipschitzCone => {
                let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
                r > 0.0 && (x / r).clamp(-1.0, 1.0).acos() < self.cap_angle
            }
            DomainKind::StraightCylinder => y[0] * y[0] + y[1] * y[1] < self.scale * self.scale,
            _ => match self.profile(x) {
                Some(a) if x > 0.0 => self.in_unit_cross([y[0] / a, y[1] / a]),
                _ => false,
            },
        }
    }

    /// Polar-angle description of the intersection with the sphere of
    /// radius `r` centred at the origin.
    pub fn spherical_section(&self, r: f64) -> SphericalSection {
        match self.kind {
            DomainKind::LipschitzCone => SphericalSection::Cap { angle: self.cap_angle, mirrored: false },
            DomainKind::StraightCylinder => {
                if r <= self.scale {
                    SphericalSection::Full
                } else {
                    SphericalSection::Cap { angle: (self.scale / r).asin(), mirrored: true }
                }
            }
            DomainKind::EllipticParaboloid if self.ellipse_b < 1.0 => SphericalSection::Other,
            _ => {
                // r sin(phi) = a(r cos(phi)) has a unique root because the
                // left side increases and the right side decreases in phi.
                let g = |phi: f64| r * phi.sin() - self.profile(r * phi.cos()).unwrap_or(0.0);
                if g(FRAC_PI_2) <= 0.0 {
                    return SphericalSection::Cap { angle: FRAC_PI_2, mirrored: false };
                }
                let (mut lo, mut hi) = (0.0, FRAC_PI_2);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if g(mid) < 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                    if hi - lo < 1e-15 {
                        break;
                    }
                }
                SphericalSection::Cap { angle: 0.5 * (lo + hi), mirrored: false }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_uses_documented_keys() {
        let d = DomainSpec::cone(PI / 4.0);
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.contains("\"kind\":\"LipschitzCone\""));
        assert!(s.contains("\"A\":1.0"));
        assert!(s.contains("\"cap_angle\":0.7853981633974483"));
        let back: DomainSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        let p: DomainSpec = serde_json::from_str(r#"{"kind":"Paraboloid","A":2.0,"alpha":0.25}"#).unwrap();
        assert_eq!(p, DomainSpec::paraboloid(2.0, 0.25));
    }

    #[test]
    fn profiles() {
        let p = DomainSpec::paraboloid(1.0, 0.5);
        assert_eq!(p.profile(4.0), Some(2.0));
        assert!((p.profile_slope(4.0).unwrap() - 0.25).abs() < 1e-15);
        let c = DomainSpec::cone(PI / 4.0);
        assert!((c.profile(3.0).unwrap() - 3.0).abs() < 1e-12);
        assert_eq!(DomainSpec::cone(PI / 2.0).profile(3.0), None);
        // a'(t) decreases and a(t)/t -> 0 for the horn.
        let h = DomainSpec::horn(1.0);
        let ts = [1.0, 10.0, 100.0, 1e3, 1e4];
        for w in ts.windows(2) {
            assert!(h.profile_slope(w[1]).unwrap() < h.profile_slope(w[0]).unwrap());
            assert!(h.profile(w[1]).unwrap() / w[1] < h.profile(w[0]).unwrap() / w[0]);
        }
    }

    #[test]
    fn membership() {
        let p = DomainSpec::paraboloid(1.0, 0.5);
        assert!(p.contains([4.0, 1.9, 0.0]));
        assert!(!p.contains([4.0, 2.1, 0.0]));
        assert!(!p.contains([-1.0, 0.0, 0.0]));
        let e = DomainSpec::elliptic_paraboloid(1.0, 0.5, 0.5);
        assert!(e.contains([4.0, 1.9, 0.0]));
        assert!(!e.contains([4.0, 0.0, 1.1]));
        let half = DomainSpec::cone(PI / 2.0);
        assert!(half.contains([5.0, -3.0, 0.1]));
        assert!(!half.contains([0.0, 0.0, -0.1]));
    }

    #[test]
    fn paraboloid_spherical_cap() {
        let p = DomainSpec::paraboloid(1.0, 0.5);
        let SphericalSection::Cap { angle, .. } = p.spherical_section(100.0) else { panic!() };
        // 100 sin(phi) = sqrt(100 cos(phi))
        assert!((100.0 * angle.sin() - (100.0 * angle.cos()).sqrt()).abs() < 1e-10);
    }
}
