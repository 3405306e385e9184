//! Parametric unbounded domains, their sections and rescalings, and
//! discrete certification of the cylinder-like / cone-like conditions.

mod certify;
mod domain;
mod hausdorff;
mod rescale;
mod section;

pub use certify::{
    certify_conelike, certify_conelike_with, certify_cylinderlike, certify_cylinderlike_with, CertificationMode,
    CertificationReport, CertificationRow, CertifyOptions,
};
pub use domain::{DomainKind, DomainSpec, SphericalSection};
pub use hausdorff::hausdorff_distance;
pub use rescale::{rescale_conelike, rescale_cylinderlike, ConeWindow, CylinderWindow, RescaledSample};
pub use section::{section_at, write_grid_csv, SectionMask};

/// A point of `R^3`.
pub type Point3 = [f64; 3];
