//! Shared numerical kernels: adaptive quadrature, finite-difference stencils,
//! a tridiagonal solver and cumulative integration.
//!
//! Everything here is pure and reentrant; callers own all buffers.

use crate::error::{Error, Result};

/// Maximum bisection depth for the adaptive quadrature.
const MAX_QUAD_DEPTH: u32 = 60;

/// Outcome of one adaptive quadrature call.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    pub value: f64,
    /// Nested-rule (Richardson) estimate of the absolute error.
    pub abs_error_estimate: f64,
    /// Number of integrand evaluations performed.
    pub evaluations: usize,
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance.
///
/// The per-interval acceptance test is the classical nested-rule estimate
/// `|S2 - S1| / 15`; accepted intervals contribute the Richardson-extrapolated
/// value. Exceeding the maximum bisection depth is an error that reports the
/// tolerance actually achieved.
pub fn adaptive_quad<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
) -> Result<QuadratureResult> {
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(Error::Validation(format!(
            "quadrature interval [{a}, {b}] is invalid"
        )));
    }
    if abs_tol <= 0.0 {
        return Err(Error::Validation("quadrature tolerance must be > 0".into()));
    }
    if a == b {
        return Ok(QuadratureResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            evaluations: 0,
        });
    }

    struct State<F> {
        f: F,
        evaluations: usize,
        error_sum: f64,
        exhausted: bool,
    }

    impl<F: Fn(f64) -> f64> State<F> {
        fn eval(&mut self, x: f64) -> Result<f64> {
            self.evaluations += 1;
            let y = (self.f)(x);
            if !y.is_finite() {
                return Err(Error::Validation(format!(
                    "integrand is not finite at x = {x}"
                )));
            }
            Ok(y)
        }
    }

    fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        st: &mut State<F>,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = st.eval(lm)?;
        let frm = st.eval(rm)?;
        let left = simpson(a, m, fa, flm, fm);
        let right = simpson(m, b, fm, frm, fb);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol || depth >= MAX_QUAD_DEPTH {
            if delta.abs() > 15.0 * tol {
                st.exhausted = true;
            }
            st.error_sum += delta.abs() / 15.0;
            return Ok(left + right + delta / 15.0);
        }
        let half_tol = 0.5 * tol;
        let vl = recurse(st, a, m, fa, flm, fm, left, half_tol, depth + 1)?;
        let vr = recurse(st, m, b, fm, frm, fb, right, half_tol, depth + 1)?;
        Ok(vl + vr)
    }

    let mut st = State {
        f,
        evaluations: 0,
        error_sum: 0.0,
        exhausted: false,
    };
    let m = 0.5 * (a + b);
    let fa = st.eval(a)?;
    let fm = st.eval(m)?;
    let fb = st.eval(b)?;
    let whole = simpson(a, b, fa, fm, fb);
    let value = recurse(&mut st, a, b, fa, fm, fb, whole, abs_tol, 0)?;

    if st.exhausted && st.error_sum > abs_tol {
        return Err(Error::QuadratureTolerance {
            achieved: st.error_sum,
            requested: abs_tol,
        });
    }
    Ok(QuadratureResult {
        value,
        abs_error_estimate: st.error_sum.min(abs_tol),
        evaluations: st.evaluations,
    })
}

/// Tridiagonal linear system `A x = rhs` with `n = diag.len() >= 3`.
#[derive(Debug, Clone)]
pub struct TridiagonalSystem {
    /// Sub-diagonal, length `n - 1` (`sub[i]` multiplies `x[i]` in row `i+1`).
    pub sub: Vec<f64>,
    /// Main diagonal, length `n`.
    pub diag: Vec<f64>,
    /// Super-diagonal, length `n - 1` (`sup[i]` multiplies `x[i+1]` in row `i`).
    pub sup: Vec<f64>,
    /// Right-hand side, length `n`.
    pub rhs: Vec<f64>,
}

impl TridiagonalSystem {
    pub fn new(sub: Vec<f64>, diag: Vec<f64>, sup: Vec<f64>, rhs: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        if n < 3 {
            return Err(Error::GridTooCoarse { needed: 3, got: n });
        }
        if sub.len() != n - 1 || sup.len() != n - 1 || rhs.len() != n {
            return Err(Error::Validation(format!(
                "tridiagonal arrays inconsistent with n = {n}: sub {}, sup {}, rhs {}",
                sub.len(),
                sup.len(),
                rhs.len()
            )));
        }
        Ok(Self { sub, diag, sup, rhs })
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Max-norm residual `||A x - rhs||_inf` for a candidate solution.
    pub fn residual_inf(&self, x: &[f64]) -> f64 {
        let n = self.n();
        let mut worst = 0.0f64;
        for i in 0..n {
            let mut ax = self.diag[i] * x[i];
            if i > 0 {
                ax += self.sub[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                ax += self.sup[i] * x[i + 1];
            }
            worst = worst.max((ax - self.rhs[i]).abs());
        }
        worst
    }
}

/// Thomas elimination. Fails on a vanishing pivot.
pub fn solve_tridiagonal(sys: &TridiagonalSystem) -> Result<Vec<f64>> {
    let n = sys.n();
    let mut c = vec![0.0; n - 1];
    let mut d = vec![0.0; n];

    let mut pivot = sys.diag[0];
    if pivot == 0.0 {
        return Err(Error::ZeroPivot { row: 0 });
    }
    c[0] = sys.sup[0] / pivot;
    d[0] = sys.rhs[0] / pivot;
    for i in 1..n {
        pivot = sys.diag[i] - sys.sub[i - 1] * c[i - 1];
        if pivot == 0.0 {
            return Err(Error::ZeroPivot { row: i });
        }
        if i < n - 1 {
            c[i] = sys.sup[i] / pivot;
        }
        d[i] = (sys.rhs[i] - sys.sub[i - 1] * d[i - 1]) / pivot;
    }
    let mut x = d;
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    Ok(x)
}

/// Derivative order selector for [`fd_derivative`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivOrder {
    First,
    Second,
    Third,
    Fourth,
}

impl DerivOrder {
    fn order(self) -> usize {
        match self {
            DerivOrder::First => 1,
            DerivOrder::Second => 2,
            DerivOrder::Third => 3,
            DerivOrder::Fourth => 4,
        }
    }

    /// Stencil width: 7 nodes give >= 4th-order first and second
    /// derivatives; the higher derivatives get 9 nodes for the same margin.
    fn window(self) -> usize {
        match self {
            DerivOrder::First | DerivOrder::Second => 7,
            DerivOrder::Third | DerivOrder::Fourth => 9,
        }
    }
}

/// Exact rational arithmetic for stencil weights (integer node offsets keep
/// every intermediate rational; the weights come out correctly rounded).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Ratio {
    n: i128,
    d: i128,
}

impl Ratio {
    const ZERO: Ratio = Ratio { n: 0, d: 1 };

    fn new(n: i128, d: i128) -> Self {
        debug_assert!(d != 0);
        let g = gcd(n.unsigned_abs(), d.unsigned_abs()) as i128;
        let sign = if d < 0 { -1 } else { 1 };
        Self {
            n: sign * n / g,
            d: sign * d / g,
        }
    }

    fn from_int(n: i128) -> Self {
        Self { n, d: 1 }
    }

    fn sub(self, o: Self) -> Self {
        Self::new(self.n * o.d - o.n * self.d, self.d * o.d)
    }

    fn mul(self, o: Self) -> Self {
        Self::new(self.n * o.n, self.d * o.d)
    }

    fn div(self, o: Self) -> Self {
        debug_assert!(o.n != 0);
        Self::new(self.n * o.d, self.d * o.n)
    }

    fn to_f64(self) -> f64 {
        self.n as f64 / self.d as f64
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b.max(1);
    }
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Fornberg weights for the `m`-th derivative at offset 0 over the given
/// integer node offsets, computed exactly.
fn fd_weights(x: &[i128], m: usize) -> Vec<f64> {
    let n = x.len();
    let mut c = vec![vec![Ratio::ZERO; n]; m + 1];
    let mut c1 = Ratio::from_int(1);
    let mut c4 = Ratio::from_int(x[0]);
    c[0][0] = Ratio::from_int(1);
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = Ratio::from_int(1);
        let c5 = c4;
        c4 = Ratio::from_int(x[i]);
        for j in 0..i {
            let c3 = Ratio::from_int(x[i] - x[j]);
            c2 = c2.mul(c3);
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    let t = Ratio::from_int(k as i128)
                        .mul(c[k - 1][i - 1])
                        .sub(c5.mul(c[k][i - 1]));
                    c[k][i] = c1.mul(t).div(c2);
                }
                c[0][i] = c1.mul(c5).mul(c[0][i - 1]).div(c2).mul(Ratio::from_int(-1));
            }
            for k in (1..=mn).rev() {
                c[k][j] = c4
                    .mul(c[k][j])
                    .sub(Ratio::from_int(k as i128).mul(c[k - 1][j]))
                    .div(c3);
            }
            c[0][j] = c4.mul(c[0][j]).div(c3);
        }
        c1 = c2;
    }
    c[m].iter().map(|r| r.to_f64()).collect()
}

/// Differentiate uniformly spaced samples (truncation order >= 4).
///
/// Interior nodes use centered windows; the nodes nearest each boundary use
/// shifted windows of the same width.
pub fn fd_derivative(samples: &[f64], h: f64, order: DerivOrder) -> Result<Vec<f64>> {
    let n = samples.len();
    let window = order.window();
    if n < window {
        return Err(Error::GridTooCoarse {
            needed: window,
            got: n,
        });
    }
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::Validation(format!("invalid grid spacing h = {h}")));
    }
    let m = order.order();
    let half = window / 2;
    // Weight patterns depend only on the evaluation position within the window.
    let patterns: Vec<Vec<f64>> = (0..window)
        .map(|pos| {
            let offsets: Vec<i128> = (0..window).map(|j| j as i128 - pos as i128).collect();
            fd_weights(&offsets, m)
        })
        .collect();
    let scale = h.powi(m as i32);
    let out = (0..n)
        .map(|i| {
            let start = i.saturating_sub(half).min(n - window);
            let pos = i - start;
            let w = &patterns[pos];
            // the weights sum to zero for m >= 1, so differencing against the
            // center value is exact and keeps rounding proportional to the
            // local variation instead of the sample magnitude
            let center = samples[i];
            let mut acc = 0.0;
            for j in 0..window {
                acc += w[j] * (samples[start + j] - center);
            }
            acc / scale
        })
        .collect();
    Ok(out)
}

/// The radial operators of the two cylindrical flows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialOperator {
    /// `L u = u'' + u'/s` (axial tube flow).
    PoiseuilleL,
    /// `L u = u'' + u'/s - u/s^2` (rotational flow).
    CouetteL,
}

/// Verify `grid` is uniform and return its spacing.
pub fn uniform_spacing(grid: &[f64]) -> Result<f64> {
    if grid.len() < 2 {
        return Err(Error::GridTooCoarse {
            needed: 2,
            got: grid.len(),
        });
    }
    let h = grid[1] - grid[0];
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::Validation("grid is not increasing".into()));
    }
    let span = grid[grid.len() - 1] - grid[0];
    for w in grid.windows(2) {
        if ((w[1] - w[0]) - h).abs() > 1e-9 * span.max(1.0) {
            return Err(Error::Validation("grid is not uniform".into()));
        }
    }
    Ok(h)
}

/// Apply a radial operator to samples on a uniform grid via FD derivatives.
///
/// At `s = 0` the singular terms are replaced by their regular-profile limits
/// (`2 u''(0)` for the tube operator acting on even profiles, `0` for the
/// rotational operator acting on odd ones).
pub fn fd_apply_radial(samples: &[f64], grid: &[f64], op: RadialOperator) -> Result<Vec<f64>> {
    if samples.len() != grid.len() {
        return Err(Error::Validation(format!(
            "samples ({}) and grid ({}) lengths differ",
            samples.len(),
            grid.len()
        )));
    }
    let h = uniform_spacing(grid)?;
    let d1 = fd_derivative(samples, h, DerivOrder::First)?;
    let d2 = fd_derivative(samples, h, DerivOrder::Second)?;
    let out = (0..grid.len())
        .map(|i| {
            let s = grid[i];
            if s == 0.0 {
                match op {
                    RadialOperator::PoiseuilleL => 2.0 * d2[i],
                    RadialOperator::CouetteL => 0.0,
                }
            } else {
                match op {
                    RadialOperator::PoiseuilleL => d2[i] + d1[i] / s,
                    RadialOperator::CouetteL => d2[i] + d1[i] / s - samples[i] / (s * s),
                }
            }
        })
        .collect();
    Ok(out)
}

/// High-order derivative over stride-widened 9-node windows.
///
/// Differentiating `f64` samples has a rounding floor of roughly
/// `sum|w| eps |u| / (s h)^m`; widening the stencil span `s h` buys accuracy
/// as long as the profile stays resolved, which the caller guarantees by
/// tying strides to the profile's boundary-layer width. Nodes whose centered
/// window would leave the domain switch to `edge_stride` (one-sided windows
/// carry much larger truncation constants, so they get a tighter span).
fn strided_derivative(
    samples: &[f64],
    h: f64,
    m: usize,
    stride: usize,
    edge_stride: usize,
) -> Result<Vec<f64>> {
    const WINDOW: usize = 9;
    let n = samples.len();
    let span = (WINDOW - 1) * stride;
    let edge_span = (WINDOW - 1) * edge_stride;
    if n < span.max(edge_span) + 1 {
        return Err(Error::GridTooCoarse {
            needed: span.max(edge_span) + 1,
            got: n,
        });
    }
    let scale = h.powi(m as i32);
    let mut out = Vec::with_capacity(n);
    let mut cache: Vec<((usize, usize), Vec<f64>)> = Vec::new();
    for i in 0..n {
        let half = span / 2;
        let (s, start) = if i >= half && i + half < n {
            (stride, i - half)
        } else {
            (
                edge_stride,
                (i.saturating_sub(edge_span / 2)).min(n - 1 - edge_span),
            )
        };
        // node offsets in grid-spacing units; near the boundaries the
        // evaluation point sits off the strided lattice, which the exact
        // weight solve handles directly
        let key = (i - start, s);
        if !cache.iter().any(|(k, _)| *k == key) {
            let offsets: Vec<i128> = (0..WINDOW)
                .map(|j| (j * s) as i128 - key.0 as i128)
                .collect();
            cache.push((key, fd_weights(&offsets, m)));
        }
        let weights = &cache.iter().find(|(k, _)| *k == key).unwrap().1;
        let center = samples[i];
        let mut acc = 0.0;
        for (j, w) in weights.iter().enumerate() {
            acc += w * (samples[start + j * s] - center);
        }
        out.push(acc / scale);
    }
    Ok(out)
}

/// Stencil strides (interior, edge) for the fourth-order residual: wide
/// enough to sit below the `eps / (s h)^4` rounding floor, narrow enough to
/// resolve a boundary layer of width `lambda1`.
fn residual_strides(lambda1: f64, h: f64, n: usize) -> (usize, usize) {
    let fit = (n - 1) / 8;
    let interior = ((lambda1 / (10.0 * h)).floor() as usize).clamp(1, fit.min(32));
    let edge = ((lambda1 / (40.0 * h)).floor() as usize).clamp(1, fit.min(8));
    (interior, edge)
}

/// Apply `L (1 - lambda1^2 L)` to samples through the expanded fourth-order
/// form, one differentiation pass per derivative order.
///
/// For the tube operator the expansion is
/// `L^2 = d^4 + (2/s) d^3 - (1/s^2) d^2 + (1/s^3) d`, for the rotational one
/// `L^2 = d^4 + (2/s) d^3 - (3/s^2) d^2 + (3/s^3) d - 3/s^4`. Avoiding the
/// operator composition keeps boundary-stencil errors from re-entering the
/// interior through a second differentiation pass. Axis values use the
/// regular-profile limits (even profiles for the tube, odd for rotation).
pub fn fd_apply_fourth_order(
    samples: &[f64],
    grid: &[f64],
    op: RadialOperator,
    lambda1: f64,
) -> Result<Vec<f64>> {
    if samples.len() != grid.len() {
        return Err(Error::Validation(format!(
            "samples ({}) and grid ({}) lengths differ",
            samples.len(),
            grid.len()
        )));
    }
    let h = uniform_spacing(grid)?;
    let (stride, edge_stride) = residual_strides(lambda1, h, grid.len());
    let d1 = fd_derivative(samples, h, DerivOrder::First)?;
    let d2 = fd_derivative(samples, h, DerivOrder::Second)?;
    let d3 = strided_derivative(samples, h, 3, stride, edge_stride)?;
    let d4 = strided_derivative(samples, h, 4, stride, edge_stride)?;
    let l2 = lambda1 * lambda1;
    let out = (0..grid.len())
        .map(|i| {
            let s = grid[i];
            if s == 0.0 {
                match op {
                    // even profile: L u -> 2 u'', L^2 u -> (8/3) u''''
                    RadialOperator::PoiseuilleL => 2.0 * d2[i] - l2 * (8.0 / 3.0) * d4[i],
                    // odd regular profile: both applications vanish
                    RadialOperator::CouetteL => 0.0,
                }
            } else {
                let lu = match op {
                    RadialOperator::PoiseuilleL => d2[i] + d1[i] / s,
                    RadialOperator::CouetteL => d2[i] + d1[i] / s - samples[i] / (s * s),
                };
                let llu = match op {
                    RadialOperator::PoiseuilleL => {
                        d4[i] + 2.0 * d3[i] / s - d2[i] / (s * s) + d1[i] / (s * s * s)
                    }
                    RadialOperator::CouetteL => {
                        d4[i] + 2.0 * d3[i] / s - 3.0 * d2[i] / (s * s)
                            + 3.0 * d1[i] / (s * s * s)
                            - 3.0 * samples[i] / (s * s * s * s)
                    }
                };
                lu - l2 * llu
            }
        })
        .collect();
    Ok(out)
}

/// Cumulative integral of samples on a uniform grid, zero at the first node.
///
/// Even-index nodes accumulate composite Simpson panels; odd-index nodes fall
/// back to one trapezoid panel on top of the preceding Simpson value.
pub fn cumulative_integral(samples: &[f64], grid: &[f64]) -> Result<Vec<f64>> {
    if samples.len() != grid.len() {
        return Err(Error::Validation(format!(
            "samples ({}) and grid ({}) lengths differ",
            samples.len(),
            grid.len()
        )));
    }
    let h = uniform_spacing(grid)?;
    let n = samples.len();
    let mut out = vec![0.0; n];
    for k in 1..n {
        if k % 2 == 0 {
            out[k] = out[k - 2] + h / 3.0 * (samples[k - 2] + 4.0 * samples[k - 1] + samples[k]);
        } else {
            out[k] = out[k - 1] + 0.5 * h * (samples[k - 1] + samples[k]);
        }
    }
    Ok(out)
}

/// `n` uniformly spaced points covering `[a, b]` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2, "linspace needs at least two points");
    let h = (b - a) / (n - 1) as f64;
    let mut v: Vec<f64> = (0..n).map(|i| a + h * i as f64).collect();
    v[n - 1] = b;
    v
}
