//! Steady tube flow driven by a constant axial pressure gradient.
//!
//! Dimensionless velocity `u(sigma) = (4 mu / beta R^2) v(R sigma)` on the
//! unit radius. The second-gradient correction to the classical parabola
//! `1 - sigma^2` is a ratio of modified Bessel functions of the primary
//! length ratio `lambda1 = ell1 / R`; everything is evaluated in scaled form
//!
//! ```text
//! u = 1 - sigma^2 + 2 lambda1 [e^{-(1-sigma)/lambda1} I0s(sigma/lambda1)
//!                              - I0s(1/lambda1)] / I1s(1/lambda1)
//! ```
//!
//! (`I0s`, `I1s` the `e^{-z}`-scaled functions), so profiles stay finite for
//! `lambda1` down to 1e-3 and beyond, where the plain Bessel values overflow.
//! The no-slip value `u(1) = 0` cancels algebraically, not numerically.

use crate::bessel;
use crate::error::{Error, Result};
use crate::material::LengthScales;
use crate::numerics::{self, RadialOperator};
use crate::types::{Adherence, FlowKind, ProfileMeta, RadialProfile};

/// Tolerance on the weak-adherence length identity
/// `lambda1^2 = (3/4) lambda2^2 + (1/2) lambda3^2 + 2 lambda4^2`.
const LAMBDA_IDENTITY_TOL: f64 = 1e-10;

/// Minimum node count for the ODE residual diagnostic.
const RESIDUAL_MIN_NODES: usize = 201;

fn check_sigma(func: &'static str, sigma: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&sigma) || !sigma.is_finite() {
        return Err(Error::Domain {
            func,
            value: sigma,
            reason: "must lie in [0, 1]",
        });
    }
    Ok(())
}

fn check_lambda1(func: &'static str, lambda1: f64) -> Result<()> {
    if !lambda1.is_finite() || lambda1 < 0.0 {
        return Err(Error::Domain {
            func,
            value: lambda1,
            reason: "must be finite and nonnegative",
        });
    }
    if lambda1 == 0.0 {
        return Err(Error::Domain {
            func,
            value: lambda1,
            reason: "must be positive; the lambda1 = 0 limit is the classical branch",
        });
    }
    Ok(())
}

fn check_weak_lambdas(lambda: [f64; 4]) -> Result<()> {
    let [l1, l2, l3, l4] = lambda;
    check_lambda1("u_weak", l1)?;
    for (name, v) in [("lambda2", l2), ("lambda3", l3), ("lambda4", l4)] {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::Validation(format!(
                "{name} must be finite and nonnegative, got {v}"
            )));
        }
    }
    let rhs = 0.75 * l2 * l2 + 0.5 * l3 * l3 + 2.0 * l4 * l4;
    if (l1 * l1 - rhs).abs() > LAMBDA_IDENTITY_TOL {
        return Err(Error::Validation(format!(
            "inconsistent lambda set: lambda1^2 = {} but (3/4)l2^2 + (1/2)l3^2 + 2 l4^2 = {rhs}",
            l1 * l1
        )));
    }
    Ok(())
}

/// `e^{-(1 - sigma)/lambda1}`, the boundary-layer factor.
fn layer(sigma: f64, lambda1: f64) -> f64 {
    ((sigma - 1.0) / lambda1).exp()
}

/// `e^{-(1-sigma)/l} I0s(sigma/l) - I0s(1/l)`; exactly zero at `sigma = 1`.
fn i0_scaled_diff(sigma: f64, lambda1: f64) -> f64 {
    layer(sigma, lambda1) * bessel::i0_scaled_raw(sigma / lambda1)
        - bessel::i0_scaled_raw(1.0 / lambda1)
}

/// Classical parabolic profile `u0(sigma) = 1 - sigma^2`.
pub fn u_classical(sigma: f64) -> f64 {
    1.0 - sigma * sigma
}

/// Strong-adherence profile (velocity and its normal derivative vanish at
/// the wall).
pub fn u_strong(sigma: f64, lambda1: f64) -> Result<f64> {
    check_sigma("u_strong", sigma)?;
    check_lambda1("u_strong", lambda1)?;
    let denom = bessel::i1_scaled_raw(1.0 / lambda1);
    Ok(u_classical(sigma) + 2.0 * lambda1 * i0_scaled_diff(sigma, lambda1) / denom)
}

#[cfg(test)]
fn u_strong_prime(sigma: f64, lambda1: f64) -> f64 {
    let denom = bessel::i1_scaled_raw(1.0 / lambda1);
    -2.0 * sigma + 2.0 * layer(sigma, lambda1) * bessel::i1_scaled_raw(sigma / lambda1) / denom
}

/// Coefficients of the weak-adherence solution:
/// `a = lambda1^2 - l2^2/4 - l3^2/2 + 2 l4^2`, `b = l2^2/4 + l3^2/2 - 2 l4^2`,
/// and the scaled denominator `lambda1^2 I0'' - lambda1 b I0'` at the wall.
fn weak_coefficients(lambda: [f64; 4]) -> (f64, f64, f64) {
    let [l1, l2, l3, l4] = lambda;
    let a = l1 * l1 - 0.25 * l2 * l2 - 0.5 * l3 * l3 + 2.0 * l4 * l4;
    let b = 0.25 * l2 * l2 + 0.5 * l3 * l3 - 2.0 * l4 * l4;
    let x = 1.0 / l1;
    let i0s = bessel::i0_scaled_raw(x);
    let i1s = bessel::i1_scaled_raw(x);
    // I0''(x) = I0(x) - I1(x)/x, scaled; here 1/x = lambda1
    let i0pp = i0s - l1 * i1s;
    let denom = l1 * l1 * i0pp - l1 * b * i1s;
    (a, b, denom)
}

/// Weak-adherence profile (velocity and hypertraction vanish at the wall).
///
/// The four dimensionless lengths must satisfy the primary-length identity.
pub fn u_weak(
    sigma: f64,
    lambda1: f64,
    lambda2: f64,
    lambda3: f64,
    lambda4: f64,
) -> Result<f64> {
    check_sigma("u_weak", sigma)?;
    check_weak_lambdas([lambda1, lambda2, lambda3, lambda4])?;
    let (a, _, denom) = weak_coefficients([lambda1, lambda2, lambda3, lambda4]);
    Ok(u_classical(sigma)
        + 2.0 * a * lambda1 * lambda1 * i0_scaled_diff(sigma, lambda1) / denom)
}

fn u_weak_prime(sigma: f64, lambda: [f64; 4]) -> f64 {
    let (a, _, denom) = weak_coefficients(lambda);
    let l1 = lambda[0];
    -2.0 * sigma
        + 2.0 * a * l1 * layer(sigma, l1) * bessel::i1_scaled_raw(sigma / l1) / denom
}

fn u_weak_second(sigma: f64, lambda: [f64; 4]) -> f64 {
    let (a, _, denom) = weak_coefficients(lambda);
    let l1 = lambda[0];
    -2.0 + 2.0 * a * layer(sigma, l1) * bessel::i1_prime_scaled_raw(sigma / l1) / denom
}

/// Dimensionless hypertraction residual of the weak-adherence boundary
/// condition at the wall: `lambda1^2 u''(1) - (l2^2/4 + l3^2/2 - 2 l4^2) u'(1)`.
///
/// Vanishes algebraically for the weak solution; the returned value is the
/// floating-point leftover.
pub fn hypertraction_residual(
    lambda1: f64,
    lambda2: f64,
    lambda3: f64,
    lambda4: f64,
) -> Result<f64> {
    check_weak_lambdas([lambda1, lambda2, lambda3, lambda4])?;
    let lambda = [lambda1, lambda2, lambda3, lambda4];
    let (_, b, _) = weak_coefficients(lambda);
    let up = u_weak_prime(1.0, lambda);
    let upp = u_weak_second(1.0, lambda);
    Ok(lambda1 * lambda1 * upp - b * up)
}

/// Strong-adherence dimensionless discharge rate.
pub fn phi_strong(lambda1: f64) -> Result<f64> {
    check_lambda1("phi_strong", lambda1)?;
    let x = 1.0 / lambda1;
    let i0s = bessel::i0_scaled_raw(x);
    let i1s = bessel::i1_scaled_raw(x);
    Ok(1.0 + 8.0 * lambda1 * (lambda1 * i1s - 0.5 * i0s) / i1s)
}

/// Weak-adherence dimensionless discharge rate.
pub fn phi_weak(lambda1: f64, lambda2: f64, lambda3: f64, lambda4: f64) -> Result<f64> {
    check_weak_lambdas([lambda1, lambda2, lambda3, lambda4])?;
    let (a, _, denom) = weak_coefficients([lambda1, lambda2, lambda3, lambda4]);
    let x = 1.0 / lambda1;
    let i0s = bessel::i0_scaled_raw(x);
    let i1s = bessel::i1_scaled_raw(x);
    Ok(1.0 + 8.0 * a * lambda1 * lambda1 * (lambda1 * i1s - 0.5 * i0s) / denom)
}

/// A tube-flow problem with dimensional data.
#[derive(Debug, Clone)]
pub struct PoiseuilleProblem {
    /// Tube radius.
    pub r: f64,
    /// Driving pressure-gradient magnitude (`-dp/dz`).
    pub beta: f64,
    /// Shear viscosity.
    pub mu: f64,
    pub lengths: LengthScales,
    pub bc: Adherence,
}

impl PoiseuilleProblem {
    pub fn new(r: f64, beta: f64, mu: f64, lengths: LengthScales, bc: Adherence) -> Result<Self> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::Validation(format!("radius must be positive, got {r}")));
        }
        if !(mu.is_finite() && mu > 0.0) {
            return Err(Error::Validation(format!("mu must be positive, got {mu}")));
        }
        if !beta.is_finite() {
            return Err(Error::Validation(format!("beta must be finite, got {beta}")));
        }
        if bc == Adherence::Weak && lengths.ell1() == 0.0 {
            return Err(Error::Validation(
                "weak adherence requires ell1 > 0".into(),
            ));
        }
        Ok(Self {
            r,
            beta,
            mu,
            lengths,
            bc,
        })
    }

    pub fn lambdas(&self) -> [f64; 5] {
        self.lengths
            .scaled_by(self.r)
            .expect("radius validated at construction")
    }

    /// Dimensionless velocity at `sigma`, dispatching on the boundary
    /// condition; `lambda1 = 0` under strong adherence is the classical branch.
    pub fn dimensionless_velocity(&self, sigma: f64) -> Result<f64> {
        check_sigma("dimensionless_velocity", sigma)?;
        let [_, l1, l2, l3, l4] = self.lambdas();
        match self.bc {
            Adherence::Strong => {
                if l1 == 0.0 {
                    Ok(u_classical(sigma))
                } else {
                    u_strong(sigma, l1)
                }
            }
            Adherence::Weak => u_weak(sigma, l1, l2, l3, l4),
        }
    }

    /// Velocity `v(r) = (beta R^2 / 4 mu) u(r / R)` at radial position `r`.
    pub fn dimensional_velocity(&self, radial: f64) -> Result<f64> {
        if !(0.0..=self.r).contains(&radial) {
            return Err(Error::Domain {
                func: "dimensional_velocity",
                value: radial,
                reason: "must lie in [0, R]",
            });
        }
        let scale = self.beta * self.r * self.r / (4.0 * self.mu);
        Ok(scale * self.dimensionless_velocity(radial / self.r)?)
    }

    /// Sample the dimensionless profile on `n` uniform nodes over `[0, 1]`.
    pub fn profile(&self, n: usize) -> Result<RadialProfile> {
        if n < 2 {
            return Err(Error::GridTooCoarse { needed: 2, got: n });
        }
        let sigma = numerics::linspace(0.0, 1.0, n);
        let u = sigma
            .iter()
            .map(|s| self.dimensionless_velocity(*s))
            .collect::<Result<Vec<_>>>()?;
        let [l0, l1, l2, l3, l4] = self.lambdas();
        RadialProfile::new(
            sigma,
            u,
            ProfileMeta {
                kind: FlowKind::Poiseuille,
                bc: self.bc,
                lambdas: [l0, l1, l2, l3, l4],
            },
        )
    }
}

/// Pointwise residual of a sampled profile against the flow's fourth-order
/// balance, with the boundary bands removed.
#[derive(Debug, Clone)]
pub struct ResidualProfile {
    pub sigma: Vec<f64>,
    pub values: Vec<f64>,
}

impl ResidualProfile {
    pub fn sup(&self) -> f64 {
        self.values.iter().fold(0.0f64, |a, v| a.max(v.abs()))
    }
}

/// Apply the dimensionless operator `L (1 - lambda1^2 L)` (with
/// `L = d^2 + (1/s) d`) to a sampled profile and return the deviation from
/// the constant driving value `-4`.
///
/// Fourth-order stencils on the expanded fourth-order form; two nodes at
/// each boundary are excluded from the returned residual.
pub fn ode_residual(profile: &RadialProfile, lambda1: f64) -> Result<ResidualProfile> {
    if profile.len() < RESIDUAL_MIN_NODES {
        return Err(Error::GridTooCoarse {
            needed: RESIDUAL_MIN_NODES,
            got: profile.len(),
        });
    }
    if !lambda1.is_finite() || lambda1 < 0.0 {
        return Err(Error::Domain {
            func: "ode_residual",
            value: lambda1,
            reason: "must be finite and nonnegative",
        });
    }
    let y = numerics::fd_apply_fourth_order(
        &profile.u,
        &profile.sigma,
        RadialOperator::PoiseuilleL,
        lambda1,
    )?;
    let n = profile.len();
    let band = 2;
    let mut sigma = Vec::with_capacity(n - 2 * band);
    let mut values = Vec::with_capacity(n - 2 * band);
    for (s, v) in profile.sigma.iter().zip(&y).take(n - band).skip(band) {
        sigma.push(*s);
        values.push(*v + 4.0);
    }
    Ok(ResidualProfile { sigma, values })
}

/// One row of a classical-limit sweep.
#[derive(Debug, Clone, Copy)]
pub struct SweepRow {
    pub lambda1: f64,
    pub sup_error: f64,
    /// Discharge rate at this length ratio.
    pub phi: f64,
}

/// Classical-limit convergence sweep: profiles against `u0 = 1 - sigma^2`.
#[derive(Debug, Clone)]
pub struct ConvergenceSweep {
    pub rows: Vec<SweepRow>,
    pub sigma: Vec<f64>,
    /// `per_sigma_errors[row][node] = |u - u0|`.
    pub per_sigma_errors: Vec<Vec<f64>>,
}

/// Sweep strictly decreasing positive `lambda1` values and tabulate
/// sup-norm errors against the classical profile.
///
/// Under weak adherence each `lambda1` is completed to the single-length
/// (spherical) parameter set `lambda2 = lambda3 = 0`, `lambda4 = lambda1/sqrt(2)`.
pub fn convergence_sweep(bc: Adherence, n: usize, lambdas: &[f64]) -> Result<ConvergenceSweep> {
    if lambdas.is_empty() {
        return Err(Error::Validation("sweep list is empty".into()));
    }
    for w in lambdas.windows(2) {
        // negated form also rejects NaN entries
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(w[1] < w[0]) {
            return Err(Error::Validation(
                "sweep lambdas must be strictly decreasing".into(),
            ));
        }
    }
    if n < 2 {
        return Err(Error::GridTooCoarse { needed: 2, got: n });
    }
    let sigma = numerics::linspace(0.0, 1.0, n);
    let mut rows = Vec::with_capacity(lambdas.len());
    let mut per_sigma = Vec::with_capacity(lambdas.len());
    for &l1 in lambdas {
        check_lambda1("convergence_sweep", l1)?;
        let l4 = l1 / std::f64::consts::SQRT_2;
        let mut errs = Vec::with_capacity(n);
        for &s in &sigma {
            let u = match bc {
                Adherence::Strong => u_strong(s, l1)?,
                Adherence::Weak => u_weak(s, l1, 0.0, 0.0, l4)?,
            };
            errs.push((u - u_classical(s)).abs());
        }
        let sup = errs.iter().fold(0.0f64, |a, v| a.max(*v));
        let phi = match bc {
            Adherence::Strong => phi_strong(l1)?,
            Adherence::Weak => phi_weak(l1, 0.0, 0.0, l4)?,
        };
        rows.push(SweepRow {
            lambda1: l1,
            sup_error: sup,
            phi,
        });
        per_sigma.push(errs);
    }
    Ok(ConvergenceSweep {
        rows,
        sigma,
        per_sigma_errors: per_sigma,
    })
}
