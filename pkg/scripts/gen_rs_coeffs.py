"""Generate the Taylor tables for the Riemann-Siegel remainder terms C0..C4.

The tables are power series in u = p - 1/2, where p is the fractional part of
sqrt(t / 2 pi).  Output is written to src/zetamoments/_rs_coeffs.py.

    python scripts/gen_rs_coeffs.py
"""

from pathlib import Path

import mpmath as mp

mp.mp.dps = 60
DEGREE = 70
CUTOFF = 1e-22

pi = mp.pi


def psi(p):
    return mp.cos(2 * pi * (p * p - p - mp.mpf(1) / 16)) / mp.cos(2 * pi * p)


def psi_taylor():
    # psi has removable singularities at p = 1/4, 3/4; expand the analytic
    # numerator/denominator quotient around 1/2 where cos(2 pi p) = -1.
    coeffs = mp.taylor(psi, mp.mpf(1) / 2, DEGREE, method="quad", radius=mp.mpf(1))
    # contour quadrature leaves round-off imaginary parts on a real function
    return [mp.re(c) for c in coeffs]


def deriv(a, m):
    """Series coefficients of the m-th derivative."""
    return [a[n + m] * mp.factorial(n + m) / mp.factorial(n) for n in range(len(a) - m)]


def combo(a, parts):
    out = [mp.mpf(0)] * (len(a) - max(m for m, _ in parts))
    for m, c in parts:
        d = deriv(a, m)
        for n in range(len(out)):
            out[n] += c * d[n]
    return out


def main():
    a = psi_taylor()
    series = {
        0: combo(a, [(0, 1)]),
        1: combo(a, [(3, -1 / (96 * pi**2))]),
        2: combo(a, [(2, 1 / (64 * pi**2)), (6, 1 / (18432 * pi**4))]),
        3: combo(
            a,
            [
                (1, -1 / (64 * pi**2)),
                (5, -1 / (3840 * pi**4)),
                (9, -1 / (5308416 * pi**6)),
            ],
        ),
        4: combo(
            a,
            [
                (0, 1 / (128 * pi**2)),
                (4, 19 / (24576 * pi**4)),
                (8, 11 / (5898240 * pi**6)),
                (12, 1 / (2038431744 * pi**8)),
            ],
        ),
    }
    lines = [
        '"""Taylor coefficients of the Riemann-Siegel terms C0..C4 in u = p - 1/2.',
        "",
        "Generated by scripts/gen_rs_coeffs.py; do not edit by hand.",
        '"""',
        "",
    ]
    for k, coeffs in series.items():
        # parity of psi about 1/2 makes alternate coefficients vanish exactly
        coeffs = [c if abs(c) > mp.mpf(10) ** -40 else mp.mpf(0) for c in coeffs]
        n_keep = len(coeffs)
        while n_keep > 1 and abs(coeffs[n_keep - 1]) * mp.mpf(0.5) ** (n_keep - 1) < CUTOFF:
            n_keep -= 1
        body = ",\n".join(f"    {mp.nstr(c, 20, min_fixed=-1, max_fixed=1)}" for c in coeffs[:n_keep])
        lines.append(f"C{k} = (\n{body},\n)\n")
    out = Path(__file__).resolve().parents[1] / "src" / "zetamoments" / "_rs_coeffs.py"
    out.write_text("\n".join(lines))
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
