//! Material parameters of the second-gradient model: hyperviscosity
//! coefficients, intrinsic length scales and the conversions between them,
//! the dissipation-rate algebra with its positivity constraints, and the
//! ellipticity indicator for the pressure-dependent-viscosity extension.
//!
//! Two equivalent parameterizations coexist. The hyperviscosities
//! `(eta1, eta2, eta3)` weight the three invariant pieces of the velocity's
//! second gradient; the lengths `(ell2, ell3, ell4)` are their dissipative
//! normal form, and
//!
//! ```text
//! ell1^2 = (3/4) ell2^2 + (1/2) ell3^2 + 2 ell4^2
//! ```
//!
//! is the primary length entering every flow solution. `ell0` weights the
//! inertial gradient term and only feeds the rotating-flow pressure forcing.

use crate::error::{Error, Result};

/// Names of the positivity constraints, used in error reports.
const CON_ETA12: &str = "eta1 >= 2|eta2|";
const CON_ETA3: &str = "3*eta1 - 10*eta2 - 32*eta3 >= 0";

/// Default absolute tolerance on constraint margins.
pub const CONSTRAINT_TOL: f64 = 1e-12;

/// The model's intrinsic lengths. `ell1` is derived, never stored freely.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LengthScales {
    ell0: f64,
    ell1: f64,
    ell2: f64,
    ell3: f64,
    ell4: f64,
}

impl LengthScales {
    /// Build from the independent lengths; `ell1` follows from the identity.
    pub fn new(ell0: f64, ell2: f64, ell3: f64, ell4: f64) -> Result<Self> {
        for (name, v) in [("ell0", ell0), ("ell2", ell2), ("ell3", ell3), ("ell4", ell4)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Validation(format!(
                    "{name} must be finite and nonnegative, got {v}"
                )));
            }
        }
        let ell1 = (0.75 * ell2 * ell2 + 0.5 * ell3 * ell3 + 2.0 * ell4 * ell4).sqrt();
        Ok(Self {
            ell0,
            ell1,
            ell2,
            ell3,
            ell4,
        })
    }

    /// All lengths zero: the classical Navier–Stokes limit.
    pub fn classical() -> Self {
        Self {
            ell0: 0.0,
            ell1: 0.0,
            ell2: 0.0,
            ell3: 0.0,
            ell4: 0.0,
        }
    }

    /// The single-length simplification (`ell2 = ell3 = 0`, `ell1^2 = 2 ell4^2`),
    /// parameterized directly by `ell1`.
    pub fn spherical(ell0: f64, ell1: f64) -> Result<Self> {
        if !ell1.is_finite() || ell1 < 0.0 {
            return Err(Error::Validation(format!(
                "ell1 must be finite and nonnegative, got {ell1}"
            )));
        }
        Self::new(ell0, 0.0, 0.0, ell1 / std::f64::consts::SQRT_2)
    }

    pub fn ell0(&self) -> f64 {
        self.ell0
    }
    pub fn ell1(&self) -> f64 {
        self.ell1
    }
    pub fn ell2(&self) -> f64 {
        self.ell2
    }
    pub fn ell3(&self) -> f64 {
        self.ell3
    }
    pub fn ell4(&self) -> f64 {
        self.ell4
    }

    /// Coefficient of the hyperpressure closure (the hyperpressure is
    /// `ell1^2 grad p`; no independent closure length is exposed).
    pub fn hyperpressure_coefficient(&self) -> f64 {
        self.ell1 * self.ell1
    }

    /// Dimensionless lengths `lambda_i = ell_i / radius`.
    pub fn scaled_by(&self, radius: f64) -> Result<[f64; 5]> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::Validation(format!(
                "radius must be finite and positive, got {radius}"
            )));
        }
        Ok([
            self.ell0 / radius,
            self.ell1 / radius,
            self.ell2 / radius,
            self.ell3 / radius,
            self.ell4 / radius,
        ])
    }
}

/// Shear viscosity plus the three hyperviscosity coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViscosityCoefficients {
    pub mu: f64,
    pub eta1: f64,
    pub eta2: f64,
    pub eta3: f64,
}

impl ViscosityCoefficients {
    pub fn dissipativity(&self) -> DissipativityReport {
        check_dissipativity(self.eta1, self.eta2, self.eta3)
    }
}

/// Outcome of the positivity check, with signed margins.
#[derive(Debug, Clone, Copy)]
pub struct DissipativityReport {
    pub satisfied: bool,
    /// `(eta1 - 2|eta2|, (3 eta1 - 10 eta2 - 32 eta3)/8)`.
    pub margins: (f64, f64),
}

/// Check the two dissipativity inequalities at the default tolerance.
pub fn check_dissipativity(eta1: f64, eta2: f64, eta3: f64) -> DissipativityReport {
    check_dissipativity_with_tolerance(eta1, eta2, eta3, CONSTRAINT_TOL)
}

/// Check the dissipativity inequalities with an explicit absolute tolerance.
pub fn check_dissipativity_with_tolerance(
    eta1: f64,
    eta2: f64,
    eta3: f64,
    tol: f64,
) -> DissipativityReport {
    let m1 = eta1 - 2.0 * eta2.abs();
    let m2 = (3.0 * eta1 - 10.0 * eta2 - 32.0 * eta3) / 8.0;
    DissipativityReport {
        satisfied: m1 >= -tol && m2 >= -tol,
        margins: (m1, m2),
    }
}

/// Convert hyperviscosities to length scales (`ell0` is supplied separately,
/// the field equations do not constrain it).
///
/// Fails, naming the violated inequality, when a radicand is negative.
pub fn lengths_from_etas(
    mu: f64,
    eta1: f64,
    eta2: f64,
    eta3: f64,
    ell0: f64,
) -> Result<LengthScales> {
    if !(mu.is_finite() && mu > 0.0) {
        return Err(Error::Validation(format!("mu must be positive, got {mu}")));
    }
    let r2 = (eta1 + 2.0 * eta2) / (2.0 * mu);
    let r3 = (eta1 - 2.0 * eta2) / (2.0 * mu);
    let r4 = (3.0 * eta1 - 10.0 * eta2 - 32.0 * eta3) / (16.0 * mu);
    if r2 < 0.0 || r3 < 0.0 {
        return Err(Error::Constraint {
            name: CON_ETA12,
            margin: eta1 - 2.0 * eta2.abs(),
        });
    }
    if r4 < 0.0 {
        return Err(Error::Constraint {
            name: CON_ETA3,
            margin: (3.0 * eta1 - 10.0 * eta2 - 32.0 * eta3) / 8.0,
        });
    }
    LengthScales::new(ell0, r2.sqrt(), r3.sqrt(), r4.sqrt())
}

/// Convert length scales back to hyperviscosities.
pub fn etas_from_lengths(mu: f64, lengths: &LengthScales) -> Result<(f64, f64, f64)> {
    if !(mu.is_finite() && mu > 0.0) {
        return Err(Error::Validation(format!("mu must be positive, got {mu}")));
    }
    let l2s = lengths.ell2 * lengths.ell2;
    let l3s = lengths.ell3 * lengths.ell3;
    let l4s = lengths.ell4 * lengths.ell4;
    let eta1 = mu * (l2s + l3s);
    let eta2 = 0.5 * mu * (l2s - l3s);
    let eta3 = mu * (-l2s / 16.0 + l3s / 4.0 - 0.5 * l4s);
    Ok((eta1, eta2, eta3))
}

/// Squared magnitudes of the independent pieces of the velocity's gradients.
///
/// `hat_grad_d_sq` and `hat_grad_w_sq` are the deviatoric (hat) parts; the
/// spherical parts are reconstructed internally as `|lap v|^2 / 8` and
/// `|lap v|^2 / 4` respectively.
#[derive(Debug, Clone, Copy)]
pub struct DissipationInputs {
    pub d_sq: f64,
    pub hat_grad_d_sq: f64,
    pub hat_grad_w_sq: f64,
    pub lap_v_sq: f64,
}

impl DissipationInputs {
    pub fn new(d_sq: f64, hat_grad_d_sq: f64, hat_grad_w_sq: f64, lap_v_sq: f64) -> Result<Self> {
        for (name, v) in [
            ("d_sq", d_sq),
            ("hat_grad_d_sq", hat_grad_d_sq),
            ("hat_grad_w_sq", hat_grad_w_sq),
            ("lap_v_sq", lap_v_sq),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Validation(format!(
                    "{name} must be finite and nonnegative, got {v}"
                )));
            }
        }
        Ok(Self {
            d_sq,
            hat_grad_d_sq,
            hat_grad_w_sq,
            lap_v_sq,
        })
    }

    pub fn zero() -> Self {
        Self {
            d_sq: 0.0,
            hat_grad_d_sq: 0.0,
            hat_grad_w_sq: 0.0,
            lap_v_sq: 0.0,
        }
    }
}

/// Dissipation rate through the eta parameterization, without any
/// constraint check (it is the route that exposes negative rates for
/// inadmissible coefficients).
pub fn dissipation_rate_eta_form(
    mu: f64,
    eta1: f64,
    eta2: f64,
    eta3: f64,
    inputs: &DissipationInputs,
) -> f64 {
    let grad_d_sq = inputs.hat_grad_d_sq + inputs.lap_v_sq / 8.0;
    let grad_w_sq = inputs.hat_grad_w_sq + inputs.lap_v_sq / 4.0;
    2.0 * mu * inputs.d_sq + (eta1 + 2.0 * eta2) * grad_d_sq + (eta1 - 2.0 * eta2) * grad_w_sq
        - (eta2 + 4.0 * eta3) * inputs.lap_v_sq
}

/// Dissipation rate evaluated through both algebraic routes.
///
/// Returns `(xi_ell_form, xi_eta_form)`; the two agree to rounding for any
/// admissible parameter set, which the tests exploit as an invariant.
pub fn dissipation_rate(
    mu: f64,
    lengths: &LengthScales,
    inputs: &DissipationInputs,
) -> Result<(f64, f64)> {
    if !(mu.is_finite() && mu > 0.0) {
        return Err(Error::Validation(format!("mu must be positive, got {mu}")));
    }
    let l2s = lengths.ell2 * lengths.ell2;
    let l3s = lengths.ell3 * lengths.ell3;
    let l4s = lengths.ell4 * lengths.ell4;
    let xi_ell = 2.0
        * mu
        * (inputs.d_sq
            + l2s * inputs.hat_grad_d_sq
            + l3s * inputs.hat_grad_w_sq
            + l4s * inputs.lap_v_sq);
    let (eta1, eta2, eta3) = etas_from_lengths(mu, lengths)?;
    let xi_eta = dissipation_rate_eta_form(mu, eta1, eta2, eta3, inputs);
    Ok((xi_ell, xi_eta))
}

/// Exponential pressure–viscosity law `mu(p) = mu0 exp(alpha (p - p0))`.
#[derive(Debug, Clone, Copy)]
pub struct BarusViscosity {
    pub mu0: f64,
    pub alpha: f64,
    pub p0: f64,
}

impl BarusViscosity {
    pub fn new(mu0: f64, alpha: f64, p0: f64) -> Result<Self> {
        if !(mu0.is_finite() && mu0 > 0.0) {
            return Err(Error::Validation(format!("mu0 must be positive, got {mu0}")));
        }
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::Validation(format!(
                "alpha must be finite and nonnegative, got {alpha}"
            )));
        }
        if !p0.is_finite() {
            return Err(Error::Validation(format!("p0 must be finite, got {p0}")));
        }
        Ok(Self { mu0, alpha, p0 })
    }

    /// `mu(p)`; saturating the exponential is an overflow error.
    pub fn evaluate(&self, p: f64) -> Result<f64> {
        let v = self.mu0 * (self.alpha * (p - self.p0)).exp();
        if !v.is_finite() {
            return Err(Error::Overflow(format!(
                "Barus viscosity overflow at p = {p}"
            )));
        }
        Ok(v)
    }

    /// `mu'(p) = alpha mu(p)`.
    pub fn derivative(&self, p: f64) -> Result<f64> {
        Ok(self.alpha * self.evaluate(p)?)
    }
}

/// Symmetric, traceless 3x3 stretching tensor.
#[derive(Debug, Clone, Copy)]
pub struct Stretching([[f64; 3]; 3]);

impl Stretching {
    /// Validate symmetry and incompressibility (`|tr D| <= 1e-10` scaled).
    pub fn new(m: [[f64; 3]; 3]) -> Result<Self> {
        let scale = m
            .iter()
            .flatten()
            .fold(0.0f64, |a, v| a.max(v.abs()))
            .max(1.0);
        #[allow(clippy::needless_range_loop)]
        for i in 0..3 {
            for j in (i + 1)..3 {
                if (m[i][j] - m[j][i]).abs() > 1e-10 * scale {
                    return Err(Error::Validation(format!(
                        "stretching tensor not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        let trace = m[0][0] + m[1][1] + m[2][2];
        if trace.abs() > 1e-10 * scale {
            return Err(Error::Validation(format!(
                "stretching tensor not traceless: tr = {trace}"
            )));
        }
        Ok(Self(m))
    }

    pub fn zero() -> Self {
        Self([[0.0; 3]; 3])
    }

    /// Simple shear of rate `gamma`: `D12 = D21 = gamma / 2`, all else zero.
    pub fn simple_shear(gamma: f64) -> Self {
        let mut m = [[0.0; 3]; 3];
        m[0][1] = 0.5 * gamma;
        m[1][0] = 0.5 * gamma;
        Self(m)
    }

    pub fn components(&self) -> &[[f64; 3]; 3] {
        &self.0
    }
}

/// Ellipticity classification of the pressure equation at one flow state.
#[derive(Debug, Clone, Copy)]
pub struct EllipticityReport {
    /// The classical (no-gradient) pressure equation stays elliptic here.
    pub classical_elliptic: bool,
    /// The second-gradient equation; constant `true` whenever `ell1 > 0`
    /// thanks to its fourth-order term.
    pub second_gradient_elliptic: bool,
    /// Smallest eigenvalue of `I - 2 mu'(p) D`.
    pub min_eigenvalue: f64,
}

/// Eigenvalues of a symmetric 3x3 matrix via the characteristic cubic
/// (trigonometric solution), ascending order.
pub fn symmetric_eigenvalues_3x3(a: &[[f64; 3]; 3]) -> [f64; 3] {
    let p1 = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    if p1 == 0.0 {
        let mut d = [a[0][0], a[1][1], a[2][2]];
        d.sort_by(|x, y| x.partial_cmp(y).unwrap());
        return d;
    }
    let q = (a[0][0] + a[1][1] + a[2][2]) / 3.0;
    let p2 = (a[0][0] - q).powi(2) + (a[1][1] - q).powi(2) + (a[2][2] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    let mut b = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            b[i][j] = (a[i][j] - if i == j { q } else { 0.0 }) / p;
        }
    }
    let det_b = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
        - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    let r = (det_b / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let e1 = q + 2.0 * p * phi.cos();
    let e3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::FRAC_PI_3 * 2.0).cos();
    let e2 = 3.0 * q - e1 - e3;
    let mut out = [e1, e2, e3];
    out.sort_by(|x, y| x.partial_cmp(y).unwrap());
    out
}

/// Classify ellipticity of the pressure equation for a Barus fluid in the
/// state `(p, D)`, given the primary length `ell1`.
pub fn ellipticity_indicator(
    barus: &BarusViscosity,
    p: f64,
    d: &Stretching,
    ell1: f64,
) -> Result<EllipticityReport> {
    if !ell1.is_finite() || ell1 < 0.0 {
        return Err(Error::Validation(format!(
            "ell1 must be finite and nonnegative, got {ell1}"
        )));
    }
    let mu_prime = barus.derivative(p)?;
    let dm = d.components();
    let mut m = [[0.0; 3]; 3];
    #[allow(clippy::needless_range_loop)]
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = if i == j { 1.0 } else { 0.0 } - 2.0 * mu_prime * dm[i][j];
        }
    }
    let eig = symmetric_eigenvalues_3x3(&m);
    let classical = eig[0] > 0.0;
    Ok(EllipticityReport {
        classical_elliptic: classical,
        // the fourth-order pressure term keeps the equation elliptic for any
        // positive ell1; at ell1 = 0 the equation degenerates to the classical one
        second_gradient_elliptic: if ell1 > 0.0 { true } else { classical },
        min_eigenvalue: eig[0],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn zero_map_round_trips() {
        let l = lengths_from_etas(1.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(
            (l.ell1(), l.ell2(), l.ell3(), l.ell4()),
            (0.0, 0.0, 0.0, 0.0)
        );
        let (e1, e2, e3) = etas_from_lengths(1.0, &l).unwrap();
        assert_eq!((e1, e2, e3), (0.0, 0.0, 0.0));
    }

    #[test]
    fn worked_conversion_example() {
        // mu=1, eta=(2, 1, -1/4): ell2^2 = 2, ell3^2 = 0, ell4^2 = 1/4.
        let l = lengths_from_etas(1.0, 2.0, 1.0, -0.25, 0.0).unwrap();
        assert_relative_eq!(l.ell2() * l.ell2(), 2.0, max_relative = 1e-14);
        assert_relative_eq!(l.ell3(), 0.0, epsilon = 1e-15);
        assert_relative_eq!(l.ell4() * l.ell4(), 0.25, max_relative = 1e-14);
        assert_relative_eq!(l.ell1() * l.ell1(), 2.0, max_relative = 1e-14);

        let (e1, e2, e3) = etas_from_lengths(1.0, &l).unwrap();
        assert_relative_eq!(e1, 2.0, max_relative = 1e-14);
        assert_relative_eq!(e2, 1.0, max_relative = 1e-14);
        assert_relative_eq!(e3, -0.25, max_relative = 1e-14);
    }

    #[test]
    fn violated_inequality_is_named() {
        let err = lengths_from_etas(1.0, 1.0, 1.0, 0.0, 0.0).unwrap_err();
        match err {
            Error::Constraint { name, margin } => {
                assert_eq!(name, CON_ETA12);
                assert!(margin < 0.0);
            }
            other => panic!("unexpected error {other:?}"),
        }
        // third inequality violated on its own
        let err = lengths_from_etas(1.0, 1.0, 0.0, 1.0, 0.0).unwrap_err();
        match err {
            Error::Constraint { name, .. } => assert_eq!(name, CON_ETA3),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn spherical_case_identities() {
        let t = 0.37f64;
        let l = LengthScales::new(0.0, 0.0, 0.0, t.sqrt()).unwrap();
        let (e1, e2, e3) = etas_from_lengths(2.0, &l).unwrap();
        assert_eq!(e1, 0.0);
        assert_eq!(e2, 0.0);
        assert_relative_eq!(e3, -2.0 * t / 2.0, max_relative = 1e-14);
        assert_relative_eq!(l.ell1() * l.ell1(), 2.0 * t, max_relative = 1e-14);

        let s = LengthScales::spherical(0.0, 0.4).unwrap();
        assert_relative_eq!(s.ell1(), 0.4, max_relative = 1e-14);
    }

    #[test]
    fn dissipativity_margins() {
        let r = check_dissipativity(2.0, 1.0, -0.25);
        assert!(r.satisfied);
        assert_relative_eq!(r.margins.0, 0.0, epsilon = 1e-15);
        assert_relative_eq!(r.margins.1, 0.5, max_relative = 1e-14);

        let r = check_dissipativity(1.0, 1.0, 0.0);
        assert!(!r.satisfied);
        assert!(r.margins.0 < 0.0);
    }

    #[test]
    fn dissipation_rate_zero_and_unit_cases() {
        let l = LengthScales::new(0.0, 1.0, 1.0, 1.0).unwrap();
        let (a, b) = dissipation_rate(1.0, &l, &DissipationInputs::zero()).unwrap();
        assert_eq!((a, b), (0.0, 0.0));

        let inputs = DissipationInputs::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let (xi_ell, xi_eta) = dissipation_rate(1.0, &l, &inputs).unwrap();
        assert_relative_eq!(xi_ell, 8.0, max_relative = 1e-14);
        assert_relative_eq!(xi_eta, xi_ell, max_relative = 1e-12);
    }

    #[test]
    fn barus_law() {
        let b = BarusViscosity::new(1.0, 0.5, 3.0).unwrap();
        assert_relative_eq!(b.evaluate(3.0).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(
            b.evaluate(5.0).unwrap(),
            std::f64::consts::E,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            b.derivative(5.0).unwrap(),
            0.5 * std::f64::consts::E,
            max_relative = 1e-15
        );

        let flat = BarusViscosity::new(2.5, 0.0, 0.0).unwrap();
        assert_eq!(flat.evaluate(1e9).unwrap(), 2.5);

        assert!(matches!(
            b.evaluate(1e6).unwrap_err(),
            Error::Overflow(_)
        ));
        assert!(BarusViscosity::new(-1.0, 0.5, 0.0).is_err());
    }

    #[test]
    fn ellipticity_identity_and_shear() {
        let b = BarusViscosity::new(1.0, 1.0, 0.0).unwrap();
        let rep = ellipticity_indicator(&b, 0.0, &Stretching::zero(), 0.1).unwrap();
        assert!(rep.classical_elliptic);
        assert!(rep.second_gradient_elliptic);
        assert_relative_eq!(rep.min_eigenvalue, 1.0, max_relative = 1e-14);

        // shear: eigenvalues of I - 2 mu' D are {1, 1 +- mu' gamma}
        let gamma = 0.8;
        let rep = ellipticity_indicator(&b, 0.0, &Stretching::simple_shear(gamma), 0.1).unwrap();
        assert_relative_eq!(rep.min_eigenvalue, 1.0 - gamma, max_relative = 1e-12);
        assert!(rep.classical_elliptic);

        let rep = ellipticity_indicator(&b, 0.0, &Stretching::simple_shear(1.5), 0.1).unwrap();
        assert!(!rep.classical_elliptic);
        assert!(rep.second_gradient_elliptic);

        // degenerate ell1 = 0 falls back to the classical classification
        let rep = ellipticity_indicator(&b, 0.0, &Stretching::simple_shear(1.5), 0.0).unwrap();
        assert!(!rep.second_gradient_elliptic);
    }

    #[test]
    fn stretching_validation() {
        let mut bad = [[0.0; 3]; 3];
        bad[0][1] = 1.0; // not symmetric
        assert!(Stretching::new(bad).is_err());
        let mut traced = [[0.0; 3]; 3];
        traced[0][0] = 1.0; // not traceless
        assert!(Stretching::new(traced).is_err());
        let ok = Stretching::simple_shear(2.0);
        assert!(Stretching::new(*ok.components()).is_ok());
    }

    #[test]
    fn eigenvalues_match_characteristic_polynomial_roots() {
        // cross-check the closed-form solve against bisection on det(M - xI)
        let gamma: f64 = 1.3;
        let mp = 1.0;
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        m[0][1] = -mp * gamma;
        m[1][0] = -mp * gamma;
        let eig = symmetric_eigenvalues_3x3(&m);

        let charpoly = |x: f64| {
            let a = [
                [m[0][0] - x, m[0][1], m[0][2]],
                [m[1][0], m[1][1] - x, m[1][2]],
                [m[2][0], m[2][1], m[2][2] - x],
            ];
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        };
        let bisect = |mut lo: f64, mut hi: f64| {
            assert!(charpoly(lo) * charpoly(hi) < 0.0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if charpoly(lo) * charpoly(mid) <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        };
        let r_min = bisect(1.0 - gamma - 0.5, 1.0 - gamma + 0.5);
        assert_relative_eq!(eig[0], r_min, max_relative = 1e-10);
        assert_relative_eq!(eig[0], 1.0 - gamma, max_relative = 1e-10);
        assert_relative_eq!(eig[1], 1.0, max_relative = 1e-10);
        assert_relative_eq!(eig[2], 1.0 + gamma, max_relative = 1e-10);
    }

    #[test]
    fn scaled_lengths() {
        let l = LengthScales::new(0.2, 0.0, 0.0, 0.1).unwrap();
        let lam = l.scaled_by(2.0).unwrap();
        assert_relative_eq!(lam[0], 0.1, max_relative = 1e-15);
        assert_relative_eq!(lam[4], 0.05, max_relative = 1e-15);
        assert!(l.scaled_by(0.0).is_err());
        assert_relative_eq!(
            l.hyperpressure_coefficient(),
            l.ell1() * l.ell1(),
            max_relative = 1e-15
        );
    }
}
