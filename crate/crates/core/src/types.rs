//! Shared carriers for sampled profiles and solver diagnostics.

use crate::error::{Error, Result};

/// No-slip boundary condition family at the outer wall.
///
/// Strong adherence additionally pins the normal derivative of the velocity;
/// weak adherence instead zeroes the hypertraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Adherence {
    Strong,
    Weak,
}

impl Adherence {
    pub fn as_str(self) -> &'static str {
        match self {
            Adherence::Strong => "strong",
            Adherence::Weak => "weak",
        }
    }
}

/// Which cylindrical flow a profile belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowKind {
    Poiseuille,
    TaylorCouette,
}

impl FlowKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FlowKind::Poiseuille => "poiseuille",
            FlowKind::TaylorCouette => "couette",
        }
    }
}

/// Metadata attached to a sampled radial profile.
#[derive(Debug, Clone, Copy)]
pub struct ProfileMeta {
    pub kind: FlowKind,
    pub bc: Adherence,
    /// Dimensionless lengths `[lambda0, lambda1, lambda2, lambda3, lambda4]`;
    /// entries not used by the flow are zero.
    pub lambdas: [f64; 5],
}

/// Sampled dimensionless field on a radial grid in `[0, 1]`.
#[derive(Debug, Clone)]
pub struct RadialProfile {
    pub sigma: Vec<f64>,
    pub u: Vec<f64>,
    pub meta: ProfileMeta,
}

impl RadialProfile {
    /// Build a profile, enforcing the grid invariants: strictly increasing,
    /// final node at 1, all values finite.
    pub fn new(sigma: Vec<f64>, u: Vec<f64>, meta: ProfileMeta) -> Result<Self> {
        if sigma.len() != u.len() {
            return Err(Error::Validation(format!(
                "grid ({}) and values ({}) lengths differ",
                sigma.len(),
                u.len()
            )));
        }
        if sigma.len() < 2 {
            return Err(Error::GridTooCoarse {
                needed: 2,
                got: sigma.len(),
            });
        }
        for w in sigma.windows(2) {
            // negated form also rejects NaN grids
            #[allow(clippy::neg_cmp_op_on_partial_ord)]
            if !(w[1] > w[0]) {
                return Err(Error::Validation("grid is not strictly increasing".into()));
            }
        }
        let last = *sigma.last().unwrap();
        if last != 1.0 {
            return Err(Error::Validation(format!(
                "grid must end at sigma = 1, ends at {last}"
            )));
        }
        if u.iter().any(|v| !v.is_finite()) {
            return Err(Error::Validation("profile contains non-finite values".into()));
        }
        Ok(Self { sigma, u, meta })
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }
}

/// Diagnostics for one solve: residual norms, boundary-condition residuals
/// and (when a second, independent method ran) the cross-solver discrepancy.
#[derive(Debug, Clone, Default)]
pub struct SolverReport {
    pub sup_residual: f64,
    pub bc_residuals: Vec<f64>,
    pub dual_solver_gap: Option<f64>,
    pub grid_n: usize,
}
