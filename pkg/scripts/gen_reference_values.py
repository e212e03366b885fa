"""Regenerate tests/reference_values.py with 50-digit mpmath arithmetic.

Every value here is reduced by hand to a closed form or a 1-dimensional
integral of special functions, so the numbers are independent of the
package's own quadrature engines.  Run from the repository root:

    python3 scripts/gen_reference_values.py
"""

from __future__ import annotations

import pathlib

import mpmath as mp

mp.mp.dps = 50


def eps_plus_gauss_m1() -> mp.mpf:
    """<eps(+), exp(-(p0^2+|p|^2)/2)> at m = 1.

    (1/4pi) * 4pi * int rho^2 e^{-(E^2+rho^2)/2} / E drho with
    E = sqrt(1+rho^2) reduces to e^{-1/2} int rho^2 e^{-rho^2} / E drho.
    """
    f = lambda r: r * r * mp.e ** (-r * r) / mp.sqrt(1 + r * r)
    return mp.e ** mp.mpf("-0.5") * mp.quad(f, [0, mp.inf])


def epv_plus_gauss_m1() -> mp.mpf:
    """<epv(+), exp(-(p0^2+|p|^2)/2)> at m = 1.

    The inner principal value has the closed form
    pv int e^{-x^2/2}/(x-a) dx = -pi e^{-a^2/2} erfi(a/sqrt(2)), so the
    pairing reduces to
    -e^{-1/2} int rho^2 e^{-rho^2} erfi(E/sqrt(2)) / E drho.
    """
    def f(r):
        e = mp.sqrt(1 + r * r)
        return r * r * mp.e ** (-r * r) * mp.erfi(e / mp.sqrt(2)) / e

    return -(mp.e ** mp.mpf("-0.5")) * mp.quad(f, [0, mp.inf])


def omega_leray_plus_gauss_m1() -> mp.mpf:
    """<omega_leray(+), exp(-(p0^2+|p|^2)/2)> at m = 1 = pi^(3/2) e^(-1/2)."""
    return mp.pi ** mp.mpf("1.5") * mp.e ** mp.mpf("-0.5")


def main() -> None:
    values = {
        "OMEGA_LERAY_PLUS_GAUSS_M1": omega_leray_plus_gauss_m1(),
        "EPS_PLUS_GAUSS_M1": eps_plus_gauss_m1(),
        "EPV_PLUS_GAUSS_M1": epv_plus_gauss_m1(),
        "EPS_PLUS_POSITION_GAUSS": mp.mpf("0.5"),
    }
    lines = [
        '"""Frozen high-precision reference values.',
        "",
        "Generated by scripts/gen_reference_values.py (50-digit mpmath,",
        "closed-form reductions independent of the package engines).",
        '"""',
        "",
    ]
    for name, val in values.items():
        lines.append(f"{name} = {mp.nstr(val, 25)}")
    lines.append("")
    out = pathlib.Path(__file__).resolve().parents[1] / "tests" / "reference_values.py"
    out.write_text("\n".join(lines))
    print(f"wrote {out}")
    for name, val in values.items():
        print(f"  {name} = {mp.nstr(val, 25)}")


if __name__ == "__main__":
    main()
