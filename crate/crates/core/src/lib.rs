//! Closed-form cylindrical flows for a second-gradient incompressible
//! viscous fluid model.
//!
//! The model augments the Navier–Stokes constitutive relations with a
//! hyperstress built from intrinsic material lengths; steady tube (Poiseuille)
//! and rotating-cylinder (Taylor–Couette) flows then admit explicit solutions
//! in terms of modified Bessel functions, and the radial pressure satisfies a
//! singular two-point boundary value problem solved here both in closed form
//! and by finite differences.
//!
//! Module map:
//!   * [`bessel`] — modified Bessel functions with exponentially scaled
//!     variants (the numerical backbone of every profile),
//!   * [`material`] — viscosity/length-scale algebra, dissipation rate,
//!     positivity constraints, pressure-dependent viscosity indicator,
//!   * [`poiseuille`] — tube flow profiles, discharge rates, diagnostics,
//!   * [`couette`] — rotating flow profiles and the radial pressure solvers,
//!   * [`numerics`] — quadrature, stencils, tridiagonal solver,
//!   * [`types`] — shared profile/report carriers.

pub mod bessel;
pub mod couette;
pub mod error;
pub mod material;
pub mod numerics;
pub mod poiseuille;
pub mod types;

pub use error::{Error, Result};
pub use types::{Adherence, FlowKind, ProfileMeta, RadialProfile, SolverReport};
