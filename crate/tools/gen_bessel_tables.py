#!/usr/bin/env python3
"""Generate Chebyshev tables and frozen reference values for the Bessel module.

Produces, via mpmath at 50-digit working precision:
  * Chebyshev coefficients (Cephes `chbevl` ordering, highest degree first)
    for e^z sqrt(z) K0(z) and e^z sqrt(z) K1(z) on z in [2, 20],
  * double-double (hi, lo) splits of mathematical constants used by the
    extended-precision test oracles,
  * reference function values frozen into unit tests.

Run from the repository root:  python3 tools/gen_bessel_tables.py
The output is pasted by hand into crates/core/src/bessel.rs and the test
support module; rerun and re-verify if the interval or degree changes.
"""

import mpmath as mp

mp.mp.dps = 50

A, B = mp.mpf(2), mp.mpf(20)


def scaled_k(nu, z):
    return mp.exp(z) * mp.sqrt(z) * mp.besselk(nu, z)


def cheb_coeffs(f, a, b, n):
    """Chebyshev interpolation coefficients c_0..c_{n-1} on [a, b].

    f(z) ~ c_0/2 + sum_{j>=1} c_j T_j(t), t = (2z - (a+b))/(b-a).
    """
    nodes = [mp.cos(mp.pi * (k + mp.mpf(0.5)) / n) for k in range(n)]
    fv = [f((b - a) / 2 * t + (b + a) / 2) for t in nodes]
    out = []
    for j in range(n):
        s = mp.mpf(0)
        for k in range(n):
            s += fv[k] * mp.cos(j * mp.pi * (k + mp.mpf(0.5)) / n)
        out.append(2 * s / n)
    return out


def chbevl_cephes_order(coeffs):
    """Reorder c_0..c_{n-1} to Cephes chbevl order (highest first)."""
    return list(reversed(coeffs))


def eval_cheb(coeffs, a, b, z):
    t = (2 * z - (a + b)) / (b - a)
    y = 2 * t
    b0, b1, b2 = mp.mpf(0), mp.mpf(0), mp.mpf(0)
    for c in coeffs:
        b2, b1 = b1, b0
        b0 = y * b1 - b2 + c
    return (b0 - b2) / 2


def verify(coeffs_hl, f, a, b, pts=4001):
    worst = mp.mpf(0)
    for i in range(pts):
        z = a + (b - a) * mp.mpf(i) / (pts - 1)
        approx = eval_cheb(coeffs_hl, a, b, z)
        exact = f(z)
        err = abs(approx - exact) / abs(exact)
        worst = max(worst, err)
    return worst


def to_f64(x):
    return float(mp.nstr(x, 17, strip_zeros=False))


def rust_array(name, coeffs):
    lines = [f"const {name}: [f64; {len(coeffs)}] = ["]
    for c in coeffs:
        lines.append(f"    {float(c)!r},")
    lines.append("];")
    return "\n".join(lines)


def dd_split(x):
    hi = float(x)
    lo = float(x - mp.mpf(hi))  # mpf(float) converts the binary value exactly
    return hi, lo


def main():
    for nu, name in ((0, "K0"), (1, "K1")):
        f = lambda z, nu=nu: scaled_k(nu, z)
        n = 64
        c = cheb_coeffs(f, A, B, n)
        # drop trailing coefficients below the f64 noise floor
        scale = max(abs(x) for x in c)
        while len(c) > 1 and abs(c[-1]) < mp.mpf("1e-20") * scale:
            c.pop()
        hl = chbevl_cephes_order(c)
        err = verify(hl, f, A, B)
        print(f"// e^z sqrt(z) {name}(z) on [2, 20]: {len(c)} coefficients, "
              f"max relative error {mp.nstr(err, 3)}")
        print(rust_array(f"CHEB_{name}_SCALED_MID", hl))
        print()

    print("// double-double constant splits (hi, lo)")
    for label, val in (
        ("EULER_GAMMA", mp.euler),
        ("PI", mp.pi),
        ("LN_2", mp.log(2)),
    ):
        hi, lo = dd_split(val)
        print(f"pub const DD_{label}: (f64, f64) = ({hi!r}, {lo!r});")
    print()

    print("// frozen reference values (50-digit evaluation, rounded to f64)")
    refs = {
        "I0_1": mp.besseli(0, 1),
        "I1_1": mp.besseli(1, 1),
        "K0_1": mp.besselk(0, 1),
        "K1_1": mp.besselk(1, 1),
        "I0_10": mp.besseli(0, 10),
        "I1_10": mp.besseli(1, 10),
        "K0_5": mp.besselk(0, 5),
        "K1_5": mp.besselk(1, 5),
        "K0_15": mp.besselk(0, 15),
        "K1_15": mp.besselk(1, 15),
        "I0_SECOND_1": mp.besseli(0, 1) - mp.besseli(1, 1),
        "I0_SCALED_700": mp.exp(-700) * mp.besseli(0, 700),
        "I1_SCALED_700": mp.exp(-700) * mp.besseli(1, 700),
        "K0_SCALED_700": mp.exp(700) * mp.besselk(0, 700),
        "K1_SCALED_700": mp.exp(700) * mp.besselk(1, 700),
        "K0_SCALED_50": mp.exp(50) * mp.besselk(0, 50),
        "I0_SCALED_1E6": mp.exp(-mp.mpf(10) ** 6) * mp.besseli(0, mp.mpf(10) ** 6),
        # centreline value of the strong-adherence tube profile at lambda1 = 0.1
        "U_STRONG_CENTER_L01": 1 + mp.mpf(1) / 5 * (1 - mp.besseli(0, 10)) / mp.besseli(1, 10),
    }
    for k, v in refs.items():
        print(f"pub const REF_{k}: f64 = {to_f64(v)!r};")
        print(f"//   {mp.nstr(v, 30)}")


if __name__ == "__main__":
    main()
