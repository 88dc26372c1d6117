//! Rotating-cylinder (Taylor–Couette) flow: closed-form velocity under strong
//! and weak adherence, and the radial pressure boundary-value problem solved
//! by two independent routes.
//!
//! The dimensionless azimuthal velocity is `u(sigma) = v(R sigma) / (Omega R)`.
//! Weak adherence reproduces rigid rotation `u = sigma` exactly; strong
//! adherence adds a Bessel boundary layer. The radial momentum balance then
//! fixes the pressure derivative `g = pi'(sigma)` through
//!
//! ```text
//! g'' + g'/sigma - (1/sigma^2 + 1/lambda1^2) g = phi(sigma)
//! ```
//!
//! with the wall condition `pi'(1) = 0` and regularity on the axis. Route one
//! evaluates the variation-of-parameters kernel (modified Bessel pair) with
//! adaptive quadrature; route two substitutes `h = sigma^{1/2} g`, removing
//! the first-derivative term, and solves the resulting two-point problem
//!
//! ```text
//! h'' + (1/(4 sigma^2) - 1/sigma^2 - 1/lambda1^2) h = sigma^{1/2} phi
//! ```
//!
//! with a second-order central-difference tridiagonal system on
//! `[eps, 1]`, `eps = 1e-6`, `h(eps) = h(1) = 0`. Each finite-difference
//! solve records its sup discrepancy against the closed form: the two routes
//! cross-validate every pressure result.
//!
//! All Bessel kernels are evaluated in scaled form with explicit
//! `e^{-(difference)/lambda1}` factors, so nothing overflows at small
//! `lambda1`.

use crate::bessel;
use crate::error::{Error, Result};
use crate::material::LengthScales;
use crate::numerics::{self, RadialOperator, TridiagonalSystem};
use crate::types::{Adherence, FlowKind, ProfileMeta, RadialProfile, SolverReport};

/// Left grid endpoint standing in for the singular axis in the pressure BVP;
/// regularity gives `h ~ sigma^{3/2}`, so `h(eps) = 0` is consistent.
pub const PRESSURE_AXIS_EPS: f64 = 1e-6;
/// Absolute tolerance per kernel integral in the closed-form pressure solver.
const KERNEL_QUAD_TOL: f64 = 1e-10;
/// Minimum node count for the FD pressure solve (at least 400 interior).
const FD_MIN_NODES: usize = 402;
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

// ---------------------------------------------------------------------------
// small-argument-safe Bessel combinations for the velocity derivatives
// ---------------------------------------------------------------------------

/// `e^{-z} I1(z) / z`; `1/2` at `z = 0`.
fn i1_over_z_scaled(z: f64) -> f64 {
    if z == 0.0 {
        0.5
    } else {
        bessel::i1_scaled_raw(z) / z
    }
}

/// `e^{-z} (z I0(z) - 2 I1(z)) / z^2`.
///
/// The numerator cancels to `z^3/8` at small `z`; below `z = 1` the exact
/// series `sum_{k>=1} z^{2k-1} 4^{-k} k / (k! (k+1)!)` is used instead.
fn g_scaled(z: f64) -> f64 {
    if z <= 1.0 {
        let mut term = z / 8.0;
        let mut sum = term;
        let z2 = z * z;
        let mut k = 1.0f64;
        while term.abs() > 1e-18 * (sum.abs() + 1e-300) {
            term *= z2 / (4.0 * k * (k + 2.0));
            sum += term;
            k += 1.0;
        }
        sum * (-z).exp()
    } else {
        (z * bessel::i0_scaled_raw(z) - 2.0 * bessel::i1_scaled_raw(z)) / (z * z)
    }
}

/// `e^{-z} (z^2 I1(z) - 3 z I0(z) + 6 I1(z)) / z^3`, the derivative of the
/// combination above; series `sum_{k>=1} (2k-1) z^{2k-2} 4^{-k} k/(k!(k+1)!)`
/// below `z = 1` (value `1/8` at the origin).
fn g_prime_scaled(z: f64) -> f64 {
    if z <= 1.0 {
        let mut term = 0.125f64;
        let mut sum = term;
        let z2 = z * z;
        let mut k = 1.0f64;
        while term.abs() > 1e-18 * (sum.abs() + 1e-300) {
            term *= z2 * (2.0 * k + 1.0) / (4.0 * k * (k + 2.0) * (2.0 * k - 1.0));
            sum += term;
            k += 1.0;
        }
        sum * (-z).exp()
    } else {
        (z * z * bessel::i1_scaled_raw(z) - 3.0 * z * bessel::i0_scaled_raw(z)
            + 6.0 * bessel::i1_scaled_raw(z))
            / (z * z * z)
    }
}

// ---------------------------------------------------------------------------
// velocity profiles
// ---------------------------------------------------------------------------

/// Strong-adherence velocity model with cached wall constants.
#[derive(Debug, Clone, Copy)]
pub struct StrongTc {
    lambda1: f64,
    /// `e^{-x} I1(x)`, `x = 1/lambda1`.
    i1s_wall: f64,
    /// Scaled denominator `2 I1s(x) - I0s(x)/lambda1`.
    denom: f64,
}

impl StrongTc {
    pub fn new(lambda1: f64) -> Result<Self> {
        check_lambda1("u_strong_tc", lambda1)?;
        let x = 1.0 / lambda1;
        let i1s_wall = bessel::i1_scaled_raw(x);
        let denom = 2.0 * i1s_wall - bessel::i0_scaled_raw(x) / lambda1;
        Ok(Self {
            lambda1,
            i1s_wall,
            denom,
        })
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    /// Boundary-layer factor `e^{-(1-sigma)/lambda1}`.
    fn layer(&self, sigma: f64) -> f64 {
        ((sigma - 1.0) / self.lambda1).exp()
    }

    /// `u(sigma)`; `u(0) = 0` and `u(1) = 1` hold exactly.
    pub fn u(&self, sigma: f64) -> f64 {
        let z = sigma / self.lambda1;
        let num = self.layer(sigma) * bessel::i1_scaled_raw(z) - sigma * self.i1s_wall;
        sigma + num / self.denom
    }

    /// `w = u / sigma` (finite on the axis).
    pub fn w(&self, sigma: f64) -> f64 {
        let z = sigma / self.lambda1;
        let num = self.layer(sigma) / self.lambda1 * i1_over_z_scaled(z) - self.i1s_wall;
        1.0 + num / self.denom
    }

    /// `w'(sigma)`, via the cancellation-free factored form.
    pub fn w_prime(&self, sigma: f64) -> f64 {
        let z = sigma / self.lambda1;
        self.layer(sigma) * g_scaled(z) / (self.lambda1 * self.lambda1 * self.denom)
    }

    /// `w''(sigma)`.
    pub fn w_second(&self, sigma: f64) -> f64 {
        let z = sigma / self.lambda1;
        self.layer(sigma) * g_prime_scaled(z)
            / (self.lambda1 * self.lambda1 * self.lambda1 * self.denom)
    }
}

/// Velocity model feeding the pressure forcing.
#[derive(Debug, Clone, Copy)]
pub enum TcVelocity {
    /// Rigid rotation `u = sigma`: the weak-adherence and classical profile.
    Rigid,
    /// Strong adherence at a given `lambda1`.
    Strong(StrongTc),
}

impl TcVelocity {
    pub fn for_bc(bc: Adherence, lambda1: f64) -> Result<Self> {
        match bc {
            Adherence::Weak => Ok(TcVelocity::Rigid),
            Adherence::Strong => Ok(TcVelocity::Strong(StrongTc::new(lambda1)?)),
        }
    }

    pub fn u(&self, sigma: f64) -> f64 {
        match self {
            TcVelocity::Rigid => sigma,
            TcVelocity::Strong(s) => s.u(sigma),
        }
    }

    /// `(w, w', w'')` with `w = u / sigma`.
    fn w_family(&self, sigma: f64) -> (f64, f64, f64) {
        match self {
            TcVelocity::Rigid => (1.0, 0.0, 0.0),
            TcVelocity::Strong(s) => (s.w(sigma), s.w_prime(sigma), s.w_second(sigma)),
        }
    }
}

/// Strong-adherence dimensionless velocity.
pub fn u_strong_tc(sigma: f64, lambda1: f64) -> Result<f64> {
    check_sigma("u_strong_tc", sigma)?;
    Ok(StrongTc::new(lambda1)?.u(sigma))
}

/// Weak-adherence dimensionless velocity: rigid rotation.
pub fn u_weak_tc(sigma: f64) -> f64 {
    sigma
}

/// Classical dimensionless velocity (identical to weak adherence).
pub fn u_classical_tc(sigma: f64) -> f64 {
    sigma
}

// ---------------------------------------------------------------------------
// pressure forcing
// ---------------------------------------------------------------------------

fn forcing_raw(sigma: f64, vel: &TcVelocity, lambda0: f64, lambda1: f64) -> f64 {
    let (w, wp, wpp) = vel.w_family(sigma);
    let u = sigma * w;
    let up = w + sigma * wp;
    let centrifugal = u * w / (lambda1 * lambda1);
    if lambda0 == 0.0 {
        return -centrifugal;
    }
    let ratio = lambda0 / lambda1;
    // d/dsigma [ u (u/sigma)' + (u/sigma)^2 ] written in the w family
    let inertial_gradient = up * wp + u * wpp + 2.0 * w * wp;
    ratio * ratio * inertial_gradient - centrifugal
}

/// Dimensionless radial pressure forcing
/// `phi = (lambda0^2/lambda1^2) d/dsigma[u (u/sigma)' + (u/sigma)^2]
///        - (1/lambda1^2) u^2/sigma`,
/// with the axis value obtained from the regular limit (never a division by
/// zero: `u^2/sigma` is computed as `u * (u/sigma)`).
pub fn forcing(sigma: f64, vel: &TcVelocity, lambda0: f64, lambda1: f64) -> Result<f64> {
    check_sigma("forcing", sigma)?;
    check_lambda1("forcing", lambda1)?;
    if !lambda0.is_finite() || lambda0 < 0.0 {
        return Err(Error::Validation(format!(
            "lambda0 must be finite and nonnegative, got {lambda0}"
        )));
    }
    if let TcVelocity::Strong(s) = vel {
        if s.lambda1() != lambda1 {
            return Err(Error::Validation(format!(
                "velocity model lambda1 = {} disagrees with forcing lambda1 = {lambda1}",
                s.lambda1()
            )));
        }
    }
    Ok(forcing_raw(sigma, vel, lambda0, lambda1))
}

// ---------------------------------------------------------------------------
// pressure solves
// ---------------------------------------------------------------------------

/// Which route produced a pressure solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PressureMethod {
    ClosedFormQuadrature,
    FiniteDifferenceBvp,
    ClassicalDirect,
}

impl PressureMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            PressureMethod::ClosedFormQuadrature => "closed_form",
            PressureMethod::FiniteDifferenceBvp => "fd_bvp",
            PressureMethod::ClassicalDirect => "classical",
        }
    }
}

/// A solved dimensionless pressure field: `pi'` samples and the cumulative
/// `pi` normalized to `pi = 0` at the first node.
#[derive(Debug, Clone)]
pub struct PressureSolve {
    pub sigma: Vec<f64>,
    pub pi_prime: Vec<f64>,
    pub pi: Vec<f64>,
    pub method: PressureMethod,
    pub report: SolverReport,
}

impl PressureSolve {
    /// Sup-norm distance of `pi` from the classical `sigma^2/2`.
    pub fn sup_distance_from_classical(&self) -> f64 {
        self.sigma
            .iter()
            .zip(&self.pi)
            .map(|(s, p)| (p - 0.5 * s * s).abs())
            .fold(0.0, f64::max)
    }
}

/// A dimensionless radial pressure problem for one velocity model.
#[derive(Debug, Clone, Copy)]
pub struct PressureProblem {
    pub bc: Adherence,
    pub lambda0: f64,
    pub lambda1: f64,
}

impl PressureProblem {
    pub fn new(bc: Adherence, lambda0: f64, lambda1: f64) -> Result<Self> {
        check_lambda1("PressureProblem", lambda1)?;
        if !lambda0.is_finite() || lambda0 < 0.0 {
            return Err(Error::Validation(format!(
                "lambda0 must be finite and nonnegative, got {lambda0}"
            )));
        }
        Ok(Self {
            bc,
            lambda0,
            lambda1,
        })
    }

    fn velocity(&self) -> Result<TcVelocity> {
        TcVelocity::for_bc(self.bc, self.lambda1)
    }

    /// Variation-of-parameters solution evaluated with adaptive quadrature.
    ///
    /// Both kernel integrals per node are driven to absolute tolerance 1e-10;
    /// the wall value `pi'(1)` vanishes by exact cancellation of the two
    /// kernel branches.
    pub fn solve_closed_form(&self, n: usize) -> Result<PressureSolve> {
        if n < 3 {
            return Err(Error::GridTooCoarse { needed: 3, got: n });
        }
        let grid = numerics::linspace(PRESSURE_AXIS_EPS, 1.0, n);
        let vel = self.velocity()?;
        let l1 = self.lambda1;
        let l0 = self.lambda0;
        let x = 1.0 / l1;
        // kappa = K1(x)/I1(x) in scaled values; O(1) for all lambda1 of interest
        let kappa = bessel::k1_scaled_raw(x) / bessel::i1_scaled_raw(x);
        let phi = |s: f64| forcing_raw(s, &vel, l0, l1);

        let mut pi_prime = Vec::with_capacity(n);
        let mut worst_quad = 0.0f64;
        for &sigma in &grid {
            let i1s_sigma = bessel::i1_scaled_raw(sigma / l1);
            let wall_layer = ((sigma - 1.0) / l1).exp();
            // integral over [sigma, 1] of the Green kernel times s phi(s)
            let ja = numerics::adaptive_quad(
                |s| {
                    let i1s = bessel::i1_scaled_raw(s / l1);
                    let k1s = bessel::k1_scaled_raw(s / l1);
                    let grow = ((s - 1.0) / l1).exp();
                    let decay = ((sigma - s) / l1).exp();
                    (kappa * wall_layer * i1s * grow - k1s * decay) * s * phi(s)
                },
                sigma,
                1.0,
                KERNEL_QUAD_TOL,
            )?;
            // integral over [0, sigma] of I1 times s phi(s), with prefactors
            let p1 = kappa * i1s_sigma * wall_layer;
            let p2 = bessel::k1_scaled_raw(sigma / l1);
            let jb = numerics::adaptive_quad(
                |s| {
                    let i1s = bessel::i1_scaled_raw(s / l1);
                    let e1 = ((s - 1.0) / l1).exp();
                    let e2 = ((s - sigma) / l1).exp();
                    (p1 * e1 - p2 * e2) * i1s * s * phi(s)
                },
                0.0,
                sigma,
                KERNEL_QUAD_TOL,
            )?;
            pi_prime.push(i1s_sigma * ja.value + jb.value);
            worst_quad = worst_quad
                .max(i1s_sigma.abs() * ja.abs_error_estimate + jb.abs_error_estimate);
        }
        let pi = numerics::cumulative_integral(&pi_prime, &grid)?;
        let bc_residuals = vec![pi_prime[n - 1].abs(), pi_prime[0].abs()];
        Ok(PressureSolve {
            sigma: grid,
            pi_prime,
            pi,
            method: PressureMethod::ClosedFormQuadrature,
            report: SolverReport {
                sup_residual: worst_quad,
                bc_residuals,
                dual_solver_gap: None,
                grid_n: n,
            },
        })
    }

    /// Finite-difference solve; cross-checks itself against the closed form
    /// on the same grid and records the sup discrepancy.
    pub fn solve_fd_bvp(&self, n: usize) -> Result<PressureSolve> {
        let closed = self.solve_closed_form(n)?;
        self.fd_against_reference(n, &closed)
    }

    /// Run both routes, sharing one closed-form evaluation.
    pub fn solve_both(&self, n: usize) -> Result<(PressureSolve, PressureSolve)> {
        let closed = self.solve_closed_form(n)?;
        let fd = self.fd_against_reference(n, &closed)?;
        Ok((closed, fd))
    }

    fn fd_against_reference(
        &self,
        n: usize,
        reference: &PressureSolve,
    ) -> Result<PressureSolve> {
        let vel = self.velocity()?;
        let l0 = self.lambda0;
        let l1 = self.lambda1;
        let mut fd = pressure_fd_with_forcing(l1, n, |s| forcing_raw(s, &vel, l0, l1))?;
        let gap = fd
            .pi_prime
            .iter()
            .zip(&reference.pi_prime)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        fd.report.dual_solver_gap = Some(gap);
        Ok(fd)
    }
}

/// Solve the substituted two-point problem
/// `h'' - (3/(4 s^2) + 1/lambda1^2) h = s^{1/2} phi(s)` with
/// `h(eps) = h(1) = 0` on `n` uniform nodes, returning `pi' = h / s^{1/2}`.
///
/// Exposed with an arbitrary forcing so manufactured solutions can exercise
/// the exact discrete operator used in production.
pub fn pressure_fd_with_forcing<F: Fn(f64) -> f64>(
    lambda1: f64,
    n: usize,
    phi: F,
) -> Result<PressureSolve> {
    check_lambda1("pressure_fd_with_forcing", lambda1)?;
    if n < FD_MIN_NODES {
        return Err(Error::GridTooCoarse {
            needed: FD_MIN_NODES,
            got: n,
        });
    }
    let grid = numerics::linspace(PRESSURE_AXIS_EPS, 1.0, n);
    let h_step = grid[1] - grid[0];
    let m = n - 2;
    let inv_h2 = 1.0 / (h_step * h_step);
    let mut diag = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for &s in grid.iter().take(m + 1).skip(1) {
        let q = 0.75 / (s * s) + 1.0 / (lambda1 * lambda1);
        diag.push(-2.0 * inv_h2 - q);
        rhs.push(s.sqrt() * phi(s));
    }
    let sys = TridiagonalSystem::new(vec![inv_h2; m - 1], diag, vec![inv_h2; m - 1], rhs)?;
    let interior = numerics::solve_tridiagonal(&sys)?;
    let algebraic_residual = sys.residual_inf(&interior);

    let mut h_full = Vec::with_capacity(n);
    h_full.push(0.0);
    h_full.extend_from_slice(&interior);
    h_full.push(0.0);
    let pi_prime: Vec<f64> = grid
        .iter()
        .zip(&h_full)
        .map(|(s, h)| h / s.sqrt())
        .collect();
    let pi = numerics::cumulative_integral(&pi_prime, &grid)?;
    let bc_residuals = vec![pi_prime[n - 1].abs(), pi_prime[0].abs()];
    Ok(PressureSolve {
        sigma: grid,
        pi_prime,
        pi,
        method: PressureMethod::FiniteDifferenceBvp,
        report: SolverReport {
            sup_residual: algebraic_residual,
            bc_residuals,
            dual_solver_gap: None,
            grid_n: n,
        },
    })
}

/// Classical pressure field: `pi'(sigma) = sigma`, `pi = sigma^2/2`.
///
/// Its wall derivative is 1, not 0: the classical solution cannot satisfy
/// the second-gradient wall condition, which is the point of the comparison.
pub fn pressure_classical(n: usize) -> Result<PressureSolve> {
    if n < 2 {
        return Err(Error::GridTooCoarse { needed: 2, got: n });
    }
    let grid = numerics::linspace(0.0, 1.0, n);
    let pi_prime: Vec<f64> = grid.clone();
    let pi: Vec<f64> = grid.iter().map(|s| 0.5 * s * s).collect();
    let bc_residuals = vec![1.0, 0.0];
    Ok(PressureSolve {
        sigma: grid,
        pi_prime,
        pi,
        method: PressureMethod::ClassicalDirect,
        report: SolverReport {
            sup_residual: 0.0,
            bc_residuals,
            dual_solver_gap: None,
            grid_n: n,
        },
    })
}

// ---------------------------------------------------------------------------
// diagnostics
// ---------------------------------------------------------------------------

/// Pointwise residual of `L(1 - lambda1^2 L) u` (rotational `L`) against 0,
/// boundary bands excluded.
///
/// The profile must include the axis node `sigma = 0` and be regular there;
/// singular inputs (e.g. `1/sigma` sampled away from the axis) are rejected.
pub fn tc_ode_residual(
    profile: &RadialProfile,
    lambda1: f64,
) -> Result<crate::poiseuille::ResidualProfile> {
    if profile.len() < RESIDUAL_MIN_NODES {
        return Err(Error::GridTooCoarse {
            needed: RESIDUAL_MIN_NODES,
            got: profile.len(),
        });
    }
    if !lambda1.is_finite() || lambda1 < 0.0 {
        return Err(Error::Domain {
            func: "tc_ode_residual",
            value: lambda1,
            reason: "must be finite and nonnegative",
        });
    }
    if profile.sigma[0] != 0.0 {
        return Err(Error::Validation(
            "profile must include the axis node sigma = 0 (regularity gate)".into(),
        ));
    }
    let y = numerics::fd_apply_fourth_order(
        &profile.u,
        &profile.sigma,
        RadialOperator::CouetteL,
        lambda1,
    )?;
    let n = profile.len();
    let band = 2;
    let mut sigma = Vec::with_capacity(n - 2 * band);
    let mut values = Vec::with_capacity(n - 2 * band);
    for (s, v) in profile.sigma.iter().zip(&y).take(n - band).skip(band) {
        sigma.push(*s);
        values.push(*v);
    }
    Ok(crate::poiseuille::ResidualProfile { sigma, values })
}

/// One row of the rotational classical-limit sweep.
#[derive(Debug, Clone, Copy)]
pub struct TcSweepRow {
    pub lambda1: f64,
    pub sup_error: f64,
}

/// Classical-limit sweep of the strong/weak velocity against `u0 = sigma`.
#[derive(Debug, Clone)]
pub struct TcConvergenceSweep {
    pub rows: Vec<TcSweepRow>,
    pub sigma: Vec<f64>,
    pub per_sigma_errors: Vec<Vec<f64>>,
}

pub fn tc_convergence_sweep(
    bc: Adherence,
    n: usize,
    lambdas: &[f64],
) -> Result<TcConvergenceSweep> {
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
        check_lambda1("tc_convergence_sweep", l1)?;
        let errs: Vec<f64> = match bc {
            Adherence::Strong => {
                let model = StrongTc::new(l1)?;
                sigma.iter().map(|s| (model.u(*s) - s).abs()).collect()
            }
            // the weak profile is the classical one
            Adherence::Weak => sigma.iter().map(|_| 0.0).collect(),
        };
        let sup = errs.iter().fold(0.0f64, |a, v| a.max(*v));
        rows.push(TcSweepRow {
            lambda1: l1,
            sup_error: sup,
        });
        per_sigma.push(errs);
    }
    Ok(TcConvergenceSweep {
        rows,
        sigma,
        per_sigma_errors: per_sigma,
    })
}

// ---------------------------------------------------------------------------
// dimensional problem wrapper
// ---------------------------------------------------------------------------

/// A rotating-cylinder problem with dimensional data.
#[derive(Debug, Clone)]
pub struct CouetteProblem {
    /// Outer radius.
    pub r: f64,
    /// Wall angular velocity.
    pub omega: f64,
    /// Mass density.
    pub rho: f64,
    /// Shear viscosity.
    pub mu: f64,
    pub lengths: LengthScales,
    pub bc: Adherence,
}

impl CouetteProblem {
    pub fn new(
        r: f64,
        omega: f64,
        rho: f64,
        mu: f64,
        lengths: LengthScales,
        bc: Adherence,
    ) -> Result<Self> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::Validation(format!("radius must be positive, got {r}")));
        }
        if !(rho.is_finite() && rho > 0.0) {
            return Err(Error::Validation(format!("rho must be positive, got {rho}")));
        }
        if !(mu.is_finite() && mu > 0.0) {
            return Err(Error::Validation(format!("mu must be positive, got {mu}")));
        }
        if !omega.is_finite() {
            return Err(Error::Validation(format!("omega must be finite, got {omega}")));
        }
        Ok(Self {
            r,
            omega,
            rho,
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

    /// Dimensionless velocity; `lambda1 = 0` or weak adherence is rigid
    /// rotation.
    pub fn dimensionless_velocity(&self, sigma: f64) -> Result<f64> {
        check_sigma("dimensionless_velocity", sigma)?;
        let l1 = self.lambdas()[1];
        match self.bc {
            Adherence::Weak => Ok(u_weak_tc(sigma)),
            Adherence::Strong => {
                if l1 == 0.0 {
                    Ok(u_classical_tc(sigma))
                } else {
                    u_strong_tc(sigma, l1)
                }
            }
        }
    }

    /// `v(r) = Omega R u(r/R)`.
    pub fn velocity(&self, radial: f64) -> Result<f64> {
        if !(0.0..=self.r).contains(&radial) {
            return Err(Error::Domain {
                func: "velocity",
                value: radial,
                reason: "must lie in [0, R]",
            });
        }
        Ok(self.omega * self.r * self.dimensionless_velocity(radial / self.r)?)
    }

    /// Pressure problem in dimensionless form; requires `ell1 > 0`.
    pub fn pressure_problem(&self) -> Result<PressureProblem> {
        let [l0, l1, ..] = self.lambdas();
        PressureProblem::new(self.bc, l0, l1)
    }

    /// Factor converting dimensionless `pi` to pressure: `rho Omega^2 R^2`.
    pub fn pressure_scale(&self) -> f64 {
        self.rho * self.omega * self.omega * self.r * self.r
    }

    pub fn profile(&self, n: usize) -> Result<RadialProfile> {
        if n < 2 {
            return Err(Error::GridTooCoarse { needed: 2, got: n });
        }
        let sigma = numerics::linspace(0.0, 1.0, n);
        let u = sigma
            .iter()
            .map(|s| self.dimensionless_velocity(*s))
            .collect::<Result<Vec<_>>>()?;
        RadialProfile::new(
            sigma,
            u,
            ProfileMeta {
                kind: FlowKind::TaylorCouette,
                bc: self.bc,
                lambdas: self.lambdas(),
            },
        )
    }
}
