//! Shared test support: double-double arithmetic and extended-precision
//! reference evaluations of the modified Bessel functions.
//!
//! The references here deliberately avoid the library's own evaluation paths:
//! ascending series and large-argument expansions are summed in ~32-digit
//! double-double arithmetic, and the awkward middle range of `K0`/`K1` is
//! integrated from the `e^{-z cosh t}` representation with tight-tolerance
//! quadrature. Each integration-test binary uses its own subset.
#![allow(dead_code)]

#[allow(clippy::approx_constant)]
pub mod dd {
    //! Minimal double-double (~32 significant digits) arithmetic.

    #[derive(Debug, Clone, Copy)]
    pub struct Dd {
        pub hi: f64,
        pub lo: f64,
    }

    fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        (s, b - (s - a))
    }

    fn two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        let bb = s - a;
        (s, (a - (s - bb)) + (b - bb))
    }

    fn two_prod(a: f64, b: f64) -> (f64, f64) {
        let p = a * b;
        (p, a.mul_add(b, -p))
    }

    impl Dd {
        pub const fn new(hi: f64, lo: f64) -> Self {
            Self { hi, lo }
        }

        pub fn from_f64(x: f64) -> Self {
            Self { hi: x, lo: 0.0 }
        }

        pub fn to_f64(self) -> f64 {
            self.hi + self.lo
        }

        pub fn add(self, o: Self) -> Self {
            let (s, e) = two_sum(self.hi, o.hi);
            let e = e + self.lo + o.lo;
            let (hi, lo) = quick_two_sum(s, e);
            Self { hi, lo }
        }

        pub fn sub(self, o: Self) -> Self {
            self.add(o.neg())
        }

        pub fn neg(self) -> Self {
            Self {
                hi: -self.hi,
                lo: -self.lo,
            }
        }

        pub fn mul(self, o: Self) -> Self {
            let (p, e) = two_prod(self.hi, o.hi);
            let e = e + self.hi * o.lo + self.lo * o.hi;
            let (hi, lo) = quick_two_sum(p, e);
            Self { hi, lo }
        }

        pub fn mul_f64(self, x: f64) -> Self {
            self.mul(Self::from_f64(x))
        }

        pub fn div(self, o: Self) -> Self {
            let q1 = self.hi / o.hi;
            let r = self.sub(o.mul_f64(q1));
            let q2 = r.hi / o.hi;
            let r = r.sub(o.mul_f64(q2));
            let q3 = r.hi / o.hi;
            let (hi, lo) = quick_two_sum(q1, q2);
            Self { hi, lo }.add(Self::from_f64(q3))
        }

        pub fn div_f64(self, x: f64) -> Self {
            self.div(Self::from_f64(x))
        }

        pub fn recip(self) -> Self {
            Self::from_f64(1.0).div(self)
        }

        pub fn sqrt(self) -> Self {
            let x = self.hi.sqrt();
            let xd = Self::from_f64(x);
            let diff = self.sub(xd.mul(xd));
            xd.add(Self::from_f64(diff.hi / (2.0 * x)))
        }

        pub fn abs_hi(self) -> f64 {
            self.hi.abs()
        }
    }

    /// Generated splits (tools/gen_bessel_tables.py); the hi words are
    /// intentionally the f64 constants themselves.
    pub const EULER_GAMMA: Dd = Dd::new(0.5772156649015329, -4.942915152430645e-18);
    pub const TWO_PI: Dd = Dd::new(6.283185307179586, 2.4492935982947064e-16);
    pub const PI: Dd = Dd::new(3.141592653589793, 1.2246467991473532e-16);
}

use dd::Dd;
use sgflow_core::numerics::adaptive_quad;

/// Boundary between double-double series and double-double large-argument
/// expansions for the reference `I` functions.
const REF_I_SERIES_CUT: f64 = 30.0;
/// `K` references: series below 2, quadrature in (2, 30], expansion above.
const REF_K_SERIES_CUT: f64 = 2.0;
const REF_K_QUAD_CUT: f64 = 30.0;

fn ref_i0_series_dd(z: f64) -> Dd {
    let zd = Dd::from_f64(z);
    let q = zd.mul(zd).div_f64(4.0);
    let mut term = Dd::from_f64(1.0);
    let mut sum = Dd::from_f64(1.0);
    for k in 1..700 {
        let kf = k as f64;
        term = term.mul(q).div_f64(kf * kf);
        sum = sum.add(term);
        if term.abs_hi() < 1e-26 * sum.abs_hi() {
            break;
        }
    }
    sum
}

fn ref_i1_series_dd(z: f64) -> Dd {
    let zd = Dd::from_f64(z);
    let q = zd.mul(zd).div_f64(4.0);
    let mut term = Dd::from_f64(1.0);
    let mut sum = Dd::from_f64(1.0);
    for k in 1..700 {
        let kf = k as f64;
        term = term.mul(q).div_f64(kf * (kf + 1.0));
        sum = sum.add(term);
        if term.abs_hi() < 1e-26 * sum.abs_hi() {
            break;
        }
    }
    sum.mul(zd).div_f64(2.0)
}

/// Large-argument scaled expansion in double-double; `sign = -1` for `I`
/// (alternating products), `+1` for `K`.
fn ref_asymptotic_scaled_dd(z: f64, mu: f64, sign: f64) -> Dd {
    let mut term = Dd::from_f64(1.0);
    let mut sum = Dd::from_f64(1.0);
    let mut prev = f64::INFINITY;
    for k in 1..120 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term = term.mul_f64(sign * (mu - odd * odd) / (8.0 * z * kf));
        if term.abs_hi() >= prev {
            break;
        }
        prev = term.abs_hi();
        sum = sum.add(term);
        if term.abs_hi() < 1e-28 * sum.abs_hi() {
            break;
        }
    }
    sum
}

fn ref_i_scaled_asym(z: f64, mu: f64) -> f64 {
    let sum = ref_asymptotic_scaled_dd(z, mu, -1.0);
    let norm = dd::TWO_PI.mul_f64(z).sqrt();
    sum.div(norm).to_f64()
}

fn ref_k_scaled_asym(z: f64, mu: f64) -> f64 {
    let sum = ref_asymptotic_scaled_dd(z, mu, 1.0);
    let norm = dd::PI.div_f64(2.0 * z).sqrt();
    sum.mul(norm).to_f64()
}

/// `e^z K(z) ` in (2, 30] via the integral representation
/// `K_0 = int e^{-z cosh t} dt`, `K_1 = int e^{-z cosh t} cosh t dt`,
/// with the exponent written as `-2 z sinh^2(t/2)` for accuracy.
fn ref_k_scaled_quad(z: f64, order: u32) -> f64 {
    let t_max = (1.0 + 46.0 / z).acosh();
    let q = adaptive_quad(
        |t| {
            let sh = (0.5 * t).sinh();
            let e = (-2.0 * z * sh * sh).exp();
            if order == 0 {
                e
            } else {
                e * t.cosh()
            }
        },
        0.0,
        t_max,
        5e-14,
    )
    .expect("reference quadrature must converge");
    q.value
}

fn ref_k0_series_dd(z: f64) -> Dd {
    // -(ln(z/2) + gamma) I0 + sum H_k q^k/(k!)^2
    let zd = Dd::from_f64(z);
    let q = zd.mul(zd).div_f64(4.0);
    let mut term = Dd::from_f64(1.0);
    let mut harmonic = Dd::from_f64(0.0);
    let mut sum = Dd::from_f64(0.0);
    for k in 1..80 {
        let kf = k as f64;
        term = term.mul(q).div_f64(kf * kf);
        harmonic = harmonic.add(Dd::from_f64(1.0).div_f64(kf));
        let t = term.mul(harmonic);
        sum = sum.add(t);
        if t.abs_hi() < 1e-28 * (1.0 + sum.abs_hi()) {
            break;
        }
    }
    let log_half_z = Dd::from_f64((0.5 * z).ln());
    let pref = log_half_z.add(dd::EULER_GAMMA).neg();
    pref.mul(ref_i0_series_dd(z)).add(sum)
}

fn ref_k1_series_dd(z: f64) -> Dd {
    // 1/z + ln(z/2) I1 - (z/4) sum (H_k + H_{k+1} - 2 gamma) q^k/(k!(k+1)!)
    let zd = Dd::from_f64(z);
    let q = zd.mul(zd).div_f64(4.0);
    let mut term = Dd::from_f64(1.0);
    let mut h_k = Dd::from_f64(0.0);
    let mut h_k1 = Dd::from_f64(1.0);
    let two_gamma = dd::EULER_GAMMA.mul_f64(2.0);
    let mut sum = h_k.add(h_k1).sub(two_gamma);
    for k in 1..80 {
        let kf = k as f64;
        term = term.mul(q).div_f64(kf * (kf + 1.0));
        h_k = h_k.add(Dd::from_f64(1.0).div_f64(kf));
        h_k1 = h_k1.add(Dd::from_f64(1.0).div_f64(kf + 1.0));
        let t = term.mul(h_k.add(h_k1).sub(two_gamma));
        sum = sum.add(t);
        if term.abs_hi() < 1e-28 * (1.0 + sum.abs_hi()) {
            break;
        }
    }
    let log_half_z = Dd::from_f64((0.5 * z).ln());
    zd.recip()
        .add(log_half_z.mul(ref_i1_series_dd(z)))
        .sub(zd.div_f64(4.0).mul(sum))
}

pub fn ref_i0(z: f64) -> f64 {
    if z <= REF_I_SERIES_CUT {
        ref_i0_series_dd(z).to_f64()
    } else {
        ref_i_scaled_asym(z, 0.0) * z.exp()
    }
}

pub fn ref_i1(z: f64) -> f64 {
    if z <= REF_I_SERIES_CUT {
        ref_i1_series_dd(z).to_f64()
    } else {
        ref_i_scaled_asym(z, 4.0) * z.exp()
    }
}

pub fn ref_i0_scaled(z: f64) -> f64 {
    if z <= REF_I_SERIES_CUT {
        ref_i0_series_dd(z).to_f64() * (-z).exp()
    } else {
        ref_i_scaled_asym(z, 0.0)
    }
}

pub fn ref_i1_scaled(z: f64) -> f64 {
    if z <= REF_I_SERIES_CUT {
        ref_i1_series_dd(z).to_f64() * (-z).exp()
    } else {
        ref_i_scaled_asym(z, 4.0)
    }
}

pub fn ref_k0(z: f64) -> f64 {
    if z <= REF_K_SERIES_CUT {
        ref_k0_series_dd(z).to_f64()
    } else if z <= REF_K_QUAD_CUT {
        ref_k_scaled_quad(z, 0) * (-z).exp()
    } else {
        ref_k_scaled_asym(z, 0.0) * (-z).exp()
    }
}

pub fn ref_k1(z: f64) -> f64 {
    if z <= REF_K_SERIES_CUT {
        ref_k1_series_dd(z).to_f64()
    } else if z <= REF_K_QUAD_CUT {
        ref_k_scaled_quad(z, 1) * (-z).exp()
    } else {
        ref_k_scaled_asym(z, 4.0) * (-z).exp()
    }
}

pub fn ref_k0_scaled(z: f64) -> f64 {
    if z <= REF_K_SERIES_CUT {
        ref_k0_series_dd(z).to_f64() * z.exp()
    } else if z <= REF_K_QUAD_CUT {
        ref_k_scaled_quad(z, 0)
    } else {
        ref_k_scaled_asym(z, 0.0)
    }
}

pub fn ref_k1_scaled(z: f64) -> f64 {
    if z <= REF_K_SERIES_CUT {
        ref_k1_series_dd(z).to_f64() * z.exp()
    } else if z <= REF_K_QUAD_CUT {
        ref_k_scaled_quad(z, 1)
    } else {
        ref_k_scaled_asym(z, 4.0)
    }
}

/// `n` log-spaced points covering `[a, b]` inclusive, `a > 0`.
pub fn log_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(a > 0.0 && b > a && n >= 2);
    let la = a.ln();
    let lb = b.ln();
    let mut v: Vec<f64> = (0..n)
        .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
        .collect();
    v[0] = a;
    v[n - 1] = b;
    v
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}

#[cfg(test)]
mod self_checks {
    use super::*;

    // Frozen 50-digit values (tools/gen_bessel_tables.py) guard the oracle
    // itself; the oracle then guards the implementation.
    #[test]
    fn oracle_matches_frozen_references() {
        assert!(rel_err(ref_i0(1.0), 1.2660658777520084) < 1e-15);
        assert!(rel_err(ref_i1(1.0), 0.565159103992485) < 1e-15);
        assert!(rel_err(ref_k0(1.0), 0.42102443824070834) < 1e-15);
        assert!(rel_err(ref_k1(1.0), 0.6019072301972346) < 1e-15);
        assert!(rel_err(ref_i0(10.0), 2815.7166284662544) < 1e-15);
        assert!(rel_err(ref_k0(5.0), 0.0036910983340425942) < 1e-13);
        assert!(rel_err(ref_k1(5.0), 0.004044613445452165) < 1e-13);
        assert!(rel_err(ref_k0(15.0), 9.819536482396435e-8) < 1e-13);
        assert!(rel_err(ref_k1(15.0), 1.0141729369762092e-7) < 1e-13);
        assert!(rel_err(ref_i0_scaled(700.0), 0.015081295651531358) < 1e-14);
        assert!(rel_err(ref_k0_scaled(700.0), 0.04736236945461357) < 1e-14);
        assert!(rel_err(ref_k0_scaled(50.0), 0.17680715585742934) < 1e-14);
    }
}
