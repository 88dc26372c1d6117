//! Modified Bessel functions `I0`, `I1`, `K0`, `K1`, their derivatives and
//! exponentially scaled variants.
//!
//! The scaled variants (`e^{-z} I`, `e^{z} K`) are the workhorse of the flow
//! modules: every closed-form profile is rearranged into ratios of scaled
//! values times explicit `e^{-(1-sigma)/lambda}` factors so that nothing
//! overflows as the length-scale ratio shrinks.
//!
//! Evaluation strategy:
//!   * `I0`/`I1`: ascending power series up to `z = 40` (all terms positive,
//!     no cancellation), large-argument expansion beyond.
//!   * `K0`/`K1`: ascending log series up to `z = 2`, Chebyshev fits of
//!     `e^z sqrt(z) K(z)` on `[2, 20]` (coefficients generated by
//!     `tools/gen_bessel_tables.py` at 50-digit precision), large-argument
//!     expansion for `z >= 20`.

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Boundary between the ascending series and the large-argument expansion
/// for `I0`/`I1`.
const I_SERIES_CUT: f64 = 40.0;
/// `K` branch boundaries.
const K_SERIES_CUT: f64 = 2.0;
const K_CHEB_CUT: f64 = 20.0;

/// One modified Bessel evaluation: plain value, scaled value and argument.
///
/// For the `I` family `scaled_value = e^{-z} value`; for the `K` family
/// `scaled_value = e^{z} value`.
#[derive(Debug, Clone, Copy)]
pub struct BesselValue {
    pub value: f64,
    pub scaled_value: f64,
    pub argument: f64,
}

fn check_nonnegative(func: &'static str, z: f64) -> Result<()> {
    if !z.is_finite() {
        return Err(Error::Domain {
            func,
            value: z,
            reason: "must be finite",
        });
    }
    if z < 0.0 {
        return Err(Error::Domain {
            func,
            value: z,
            reason: "must be nonnegative",
        });
    }
    Ok(())
}

fn check_positive(func: &'static str, z: f64) -> Result<()> {
    check_nonnegative(func, z)?;
    if z == 0.0 {
        return Err(Error::Domain {
            func,
            value: z,
            reason: "must be positive (logarithmic singularity at 0)",
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// kernels (no argument validation; callers guarantee the domain)
// ---------------------------------------------------------------------------

/// Kahan-compensated sum of a term sequence produced by `next`.
struct KahanSum {
    sum: f64,
    c: f64,
}

impl KahanSum {
    fn new(first: f64) -> Self {
        Self { sum: first, c: 0.0 }
    }
    fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }
    fn value(&self) -> f64 {
        self.sum
    }
}

/// Ascending series for `I0`, valid for any `z` but used below the cut.
fn i0_series(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 1.0;
    let mut acc = KahanSum::new(1.0);
    for k in 1..400 {
        let kf = k as f64;
        term *= q / (kf * kf);
        acc.add(term);
        if term < 1e-18 * acc.value() {
            break;
        }
    }
    acc.value()
}

/// Ascending series for `I1`.
fn i1_series(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 1.0;
    let mut acc = KahanSum::new(1.0);
    for k in 1..400 {
        let kf = k as f64;
        term *= q / (kf * (kf + 1.0));
        acc.add(term);
        if term < 1e-18 * acc.value() {
            break;
        }
    }
    0.5 * z * acc.value()
}

/// Large-argument expansion of `e^{-z} I_nu(z)`; `mu = 4 nu^2`.
fn i_asymptotic_scaled(z: f64, mu: f64) -> f64 {
    let mut term = 1.0f64;
    let mut acc = KahanSum::new(1.0);
    for k in 1..60 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        let next = -term * (mu - odd * odd) / (8.0 * z * kf);
        if next.abs() >= term.abs() && k > 1 {
            break; // divergent tail of the asymptotic series
        }
        term = next;
        acc.add(term);
        if term.abs() < 1e-17 * acc.value().abs() {
            break;
        }
    }
    acc.value() / (2.0 * std::f64::consts::PI * z).sqrt()
}

/// Large-argument expansion of `e^{z} K_nu(z)`; `mu = 4 nu^2`.
fn k_asymptotic_scaled(z: f64, mu: f64) -> f64 {
    let mut term = 1.0f64;
    let mut acc = KahanSum::new(1.0);
    for k in 1..60 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        let next = term * (mu - odd * odd) / (8.0 * z * kf);
        if next.abs() >= term.abs() && k > 1 {
            break;
        }
        term = next;
        acc.add(term);
        if term.abs() < 1e-17 * acc.value().abs() {
            break;
        }
    }
    acc.value() * (0.5 * std::f64::consts::PI / z).sqrt()
}

/// Ascending log series for `K0`, `z <= 2`.
fn k0_series(z: f64) -> f64 {
    let q = 0.25 * z * z;
    // sum of H_k q^k / (k!)^2
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut acc = KahanSum::new(0.0);
    for k in 1..60 {
        let kf = k as f64;
        term *= q / (kf * kf);
        harmonic += 1.0 / kf;
        let t = term * harmonic;
        acc.add(t);
        if t < 1e-18 * (1.0 + acc.value().abs()) {
            break;
        }
    }
    -((0.5 * z).ln() + EULER_GAMMA) * i0_series(z) + acc.value()
}

/// Ascending log series for `K1`, `z <= 2`.
fn k1_series(z: f64) -> f64 {
    let q = 0.25 * z * z;
    // sum of (H_k + H_{k+1} - 2 gamma) q^k / (k! (k+1)!)
    let mut term = 1.0;
    let mut h_k = 0.0;
    let mut h_k1 = 1.0;
    let mut acc = KahanSum::new(h_k + h_k1 - 2.0 * EULER_GAMMA);
    for k in 1..60 {
        let kf = k as f64;
        term *= q / (kf * (kf + 1.0));
        h_k += 1.0 / kf;
        h_k1 += 1.0 / (kf + 1.0);
        let t = term * (h_k + h_k1 - 2.0 * EULER_GAMMA);
        acc.add(t);
        if term < 1e-18 * (1.0 + acc.value().abs()) {
            break;
        }
    }
    1.0 / z + (0.5 * z).ln() * i1_series(z) - 0.25 * z * acc.value()
}

/// Chebyshev evaluation in the Cephes layout: coefficients ordered highest
/// degree first, `y = 2 t` with `t` the mapped variable in `[-1, 1]`.
fn chbevl(y: f64, coeffs: &[f64]) -> f64 {
    let mut b0 = coeffs[0];
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for c in &coeffs[1..] {
        b2 = b1;
        b1 = b0;
        b0 = y * b1 - b2 + c;
    }
    0.5 * (b0 - b2)
}

fn k_cheb_scaled(z: f64, coeffs: &[f64]) -> f64 {
    // map [2, 20] onto t in [-1, 1]; chbevl consumes 2 t
    let t2 = (2.0 * z - (K_SERIES_CUT + K_CHEB_CUT)) / (K_CHEB_CUT - K_SERIES_CUT) * 2.0;
    chbevl(t2, coeffs) / z.sqrt()
}

const CHEB_K0_SCALED_MID: [f64; 62] = [
    2.771357692892567e-20,
    -5.496041425447783e-20,
    1.0794523190995501e-19,
    -2.115148268402491e-19,
    4.142729944030494e-19,
    -8.114425843537491e-19,
    1.5896924525093271e-18,
    -3.115086699398844e-18,
    6.105704192348073e-18,
    -1.19705517920194e-17,
    2.3475181809521346e-17,
    -4.604937017238145e-17,
    9.035704497843711e-17,
    -1.7734859486214672e-16,
    3.4819688353114507e-16,
    -6.838448467838775e-16,
    1.3434769662947279e-15,
    -2.6402643346772175e-15,
    5.190556824147994e-15,
    -1.0207864785902096e-14,
    2.0082399725259312e-14,
    -3.952406857736125e-14,
    7.781779411444414e-14,
    -1.5327581572249514e-13,
    3.020315839334851e-13,
    -5.954180682740824e-13,
    1.1743293042084289e-12,
    -2.3172013098640135e-12,
    4.574586083633321e-12,
    -9.035718704873828e-12,
    1.7856883965425516e-11,
    -3.530941484739858e-11,
    6.985985012717081e-11,
    -1.383019028560155e-10,
    2.739705386224973e-10,
    -5.430844874971811e-10,
    1.0772890689020442e-09,
    -2.138517822151615e-09,
    4.2483935819015686e-09,
    -8.446649734015313e-09,
    1.6807765026031217e-08,
    -3.347498844796445e-08,
    6.673238465054111e-08,
    -1.3316221741870504e-07,
    2.659976671747241e-07,
    -5.319286567466993e-07,
    1.064967328258999e-06,
    -2.134802147158035e-06,
    4.285005260570214e-06,
    -8.61300209489998e-06,
    1.733835235193078e-05,
    -3.495873847607686e-05,
    7.060693782423755e-05,
    -0.0001428685951295485,
    0.00028965679091760664,
    -0.0005885107826188987,
    0.0011984570144805134,
    -0.0024466381047664894,
    0.0050082693722070136,
    -0.010282024076884232,
    0.021176653610439748,
    2.4628606573587066,
];

const CHEB_K1_SCALED_MID: [f64; 64] = [
    -4.7172183439048315e-20,
    1.157849514595183e-19,
    -2.3703374723697193e-19,
    4.660667438379048e-19,
    -9.07094790030572e-19,
    1.7608596888425052e-18,
    -3.4161086145584746e-18,
    6.626809425519094e-18,
    -1.2855995707850854e-17,
    2.4943257440067778e-17,
    -4.8400824964724545e-17,
    9.393065179523112e-17,
    -1.823135517176313e-16,
    3.5390731357193423e-16,
    -6.871017404325033e-16,
    1.3341833597671276e-15,
    -2.5910457574983313e-15,
    5.032710814322272e-15,
    -9.776841031367108e-15,
    1.8996224472811643e-14,
    -3.691567403214683e-14,
    7.17516401600878e-14,
    -1.3948685629173304e-13,
    2.71217824096093e-13,
    -5.274604435898354e-13,
    1.0260102960649782e-12,
    -1.9962150607178447e-12,
    3.8847276046939196e-12,
    -7.561631968491291e-12,
    1.472233047391347e-11,
    -2.867135831061289e-11,
    5.585159404597184e-11,
    -1.0882876997179358e-10,
    2.121183850909651e-10,
    -4.135664827318795e-10,
    8.065869617646303e-10,
    -1.5736305338877135e-09,
    3.071195354775528e-09,
    -5.996158961886551e-09,
    1.1711389010764806e-08,
    -2.2883501078675492e-08,
    4.473271862176417e-08,
    -8.748380497733127e-08,
    1.7117537370159953e-07,
    -3.351034305990539e-07,
    6.563784008044632e-07,
    -1.2864195206833919e-06,
    2.5227860734135875e-06,
    -4.950690901527451e-06,
    9.722068876199079e-06,
    -1.9106494024704432e-05,
    3.758001613431529e-05,
    -7.397984120814621e-05,
    0.00014577400538289228,
    -0.0002875346659334337,
    0.0005677809629100306,
    -0.001122518373897918,
    0.002222157265804903,
    -0.004405320270321689,
    0.008747040853544115,
    -0.017397766794788754,
    0.034669831612654904,
    -0.06923475593797498,
    2.6452120053953356,
];

/// `e^{z}` with a split product so values just past the `f64` exp overflow
/// threshold (but with a finite product) survive.
fn unscale_i(scaled: f64, z: f64) -> f64 {
    if z < 705.0 {
        scaled * z.exp()
    } else {
        let h = (0.5 * z).exp();
        scaled * h * h
    }
}

pub(crate) fn i0_scaled_raw(z: f64) -> f64 {
    debug_assert!(z >= 0.0);
    if z <= I_SERIES_CUT {
        i0_series(z) * (-z).exp()
    } else {
        i_asymptotic_scaled(z, 0.0)
    }
}

pub(crate) fn i0_raw(z: f64) -> f64 {
    if z <= I_SERIES_CUT {
        i0_series(z)
    } else {
        unscale_i(i_asymptotic_scaled(z, 0.0), z)
    }
}

pub(crate) fn i1_scaled_raw(z: f64) -> f64 {
    debug_assert!(z >= 0.0);
    if z <= I_SERIES_CUT {
        i1_series(z) * (-z).exp()
    } else {
        i_asymptotic_scaled(z, 4.0)
    }
}

pub(crate) fn i1_raw(z: f64) -> f64 {
    if z <= I_SERIES_CUT {
        i1_series(z)
    } else {
        unscale_i(i_asymptotic_scaled(z, 4.0), z)
    }
}

pub(crate) fn k0_scaled_raw(z: f64) -> f64 {
    debug_assert!(z > 0.0);
    if z <= K_SERIES_CUT {
        k0_series(z) * z.exp()
    } else if z < K_CHEB_CUT {
        k_cheb_scaled(z, &CHEB_K0_SCALED_MID)
    } else {
        k_asymptotic_scaled(z, 0.0)
    }
}

pub(crate) fn k0_raw(z: f64) -> f64 {
    if z <= K_SERIES_CUT {
        k0_series(z)
    } else {
        k0_scaled_raw(z) * (-z).exp()
    }
}

pub(crate) fn k1_scaled_raw(z: f64) -> f64 {
    debug_assert!(z > 0.0);
    if z <= K_SERIES_CUT {
        k1_series(z) * z.exp()
    } else if z < K_CHEB_CUT {
        k_cheb_scaled(z, &CHEB_K1_SCALED_MID)
    } else {
        k_asymptotic_scaled(z, 4.0)
    }
}

pub(crate) fn k1_raw(z: f64) -> f64 {
    if z <= K_SERIES_CUT {
        k1_series(z)
    } else {
        k1_scaled_raw(z) * (-z).exp()
    }
}

/// `e^{-z} I1'(z) = e^{-z} (I0(z) - I1(z)/z)`; series limit `1/2` at `z = 0`.
pub(crate) fn i1_prime_scaled_raw(z: f64) -> f64 {
    if z == 0.0 {
        0.5
    } else {
        i0_scaled_raw(z) - i1_scaled_raw(z) / z
    }
}

// ---------------------------------------------------------------------------
// public surface
// ---------------------------------------------------------------------------

pub fn i0(z: f64) -> Result<f64> {
    check_nonnegative("i0", z)?;
    Ok(i0_raw(z))
}

/// `e^{-z} I0(z)`; finite for all representable `z >= 0`.
pub fn i0_scaled(z: f64) -> Result<f64> {
    check_nonnegative("i0_scaled", z)?;
    Ok(i0_scaled_raw(z))
}

pub fn i1(z: f64) -> Result<f64> {
    check_nonnegative("i1", z)?;
    Ok(i1_raw(z))
}

/// `e^{-z} I1(z)`.
pub fn i1_scaled(z: f64) -> Result<f64> {
    check_nonnegative("i1_scaled", z)?;
    Ok(i1_scaled_raw(z))
}

pub fn k0(z: f64) -> Result<f64> {
    check_positive("k0", z)?;
    Ok(k0_raw(z))
}

/// `e^{z} K0(z)`.
pub fn k0_scaled(z: f64) -> Result<f64> {
    check_positive("k0_scaled", z)?;
    Ok(k0_scaled_raw(z))
}

pub fn k1(z: f64) -> Result<f64> {
    check_positive("k1", z)?;
    Ok(k1_raw(z))
}

/// `e^{z} K1(z)`.
pub fn k1_scaled(z: f64) -> Result<f64> {
    check_positive("k1_scaled", z)?;
    Ok(k1_scaled_raw(z))
}

/// `I0'(z) = I1(z)`, by the derivative identity.
pub fn i0_prime(z: f64) -> Result<f64> {
    check_nonnegative("i0_prime", z)?;
    Ok(i1_raw(z))
}

/// `I1'(z) = I0(z) - I1(z)/z`; returns the series limit `1/2` at `z = 0`.
pub fn i1_prime(z: f64) -> Result<f64> {
    check_nonnegative("i1_prime", z)?;
    if z == 0.0 {
        Ok(0.5)
    } else {
        Ok(i0_raw(z) - i1_raw(z) / z)
    }
}

/// `I0''(z) = I1'(z)`.
pub fn i0_second(z: f64) -> Result<f64> {
    check_nonnegative("i0_second", z)?;
    i1_prime(z)
}

pub fn i0_eval(z: f64) -> Result<BesselValue> {
    check_nonnegative("i0", z)?;
    Ok(BesselValue {
        value: i0_raw(z),
        scaled_value: i0_scaled_raw(z),
        argument: z,
    })
}

pub fn i1_eval(z: f64) -> Result<BesselValue> {
    check_nonnegative("i1", z)?;
    Ok(BesselValue {
        value: i1_raw(z),
        scaled_value: i1_scaled_raw(z),
        argument: z,
    })
}

pub fn k0_eval(z: f64) -> Result<BesselValue> {
    check_positive("k0", z)?;
    Ok(BesselValue {
        value: k0_raw(z),
        scaled_value: k0_scaled_raw(z),
        argument: z,
    })
}

pub fn k1_eval(z: f64) -> Result<BesselValue> {
    check_positive("k1", z)?;
    Ok(BesselValue {
        value: k1_raw(z),
        scaled_value: k1_scaled_raw(z),
        argument: z,
    })
}
