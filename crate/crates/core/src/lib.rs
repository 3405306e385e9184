//! Numerical laboratory for the growth of positive harmonic functions that
//! vanish on the boundary of unbounded cylinder-like and cone-like domains.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`]: parametric domains, cross-sections, rescalings and
//!   Hausdorff-distance certification of the cylinder-like / cone-like
//!   conditions.
//! * [`eigensolve`]: principal Dirichlet eigenvalues of planar sections,
//!   Laplace–Beltrami eigenvalues of spherical caps and characteristic
//!   constants.
//! * [`asymptotics`]: growth integrals, the Huber lower bound and
//!   comparison of predicted and measured growth.
//! * [`pde`]: finite-difference Laplace solvers on truncated domains and the
//!   separable exact solutions used as oracles.
//! * [`measure`]: walk-on-spheres estimation of harmonic measure.
//! * [`cli`]: JSON-configured batch experiments writing CSV artifacts.

// `!(x > 0.0)` deliberately rejects NaN; index loops mirror the stencils.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop, clippy::type_complexity)]

pub mod asymptotics;
pub mod cli;
pub mod eigensolve;
pub mod error;
pub mod geometry;
pub mod interp;
pub mod linalg;
pub mod measure;
pub mod pde;
pub mod quadrature;
pub mod special;

pub use error::{Error, Result};
