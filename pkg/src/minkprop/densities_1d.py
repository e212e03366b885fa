"""One-dimensional model distributions and their Fourier transform table.

The catalogue pairs the elementary tempered distributions on the line --
delta, plane phases, principal-value poles, sign/step/indicator windows,
phase-carrying half-line windows and i-epsilon-regularized poles -- with
Gaussian-Hermite test functions, and verifies the closed transform table

    F+-(theta)  paired against u   ==   closed form paired against u,

with the left side computed through the adjoint route <theta, F+- u>
(analytic transform of u, generic quadrature for theta) and the right
side through the row's independent closed form (point evaluations,
half-line quadratures, principal values, extrapolated ladders).

Conventions: (F+- u)(y) = (2 pi)^(-1/2) * integral exp(-+ i y x) u(x) dx;
Sokhotski limits 1/(x - a -+ i eps) -> pv 1/(x-a) +- i pi delta_a hold in
the extrapolated-ladder sense with the full power sequence (the smoothed
pole has every power of epsilon in its expansion, unlike the symmetric
excision which has only odd ones).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import (
    PairingResult,
    QuadConfig,
    integrate_1d,
    integrate_pole_ladder,
    integrate_pv,
    richardson,
)
from .testfns import TestFn, random_testfn

__all__ = ["Dist1d", "pair_1d", "sokhotski_ladder", "verify_ft_table"]


@dataclass(frozen=True)
class Dist1d:
    """A catalogued distribution on the real line.

    Kinds and parameters:

    * ``delta``             point mass at ``a``
    * ``plane_phase``       the smooth function exp(i alpha x)
    * ``pv_pole``           pv 1/(x - a)
    * ``sgn``               the sign function
    * ``heaviside``         H(x)
    * ``char_interval``     indicator of [a, b]
    * ``windowed_phase``    H(a x) exp(i phase_sign a x)
    * ``damped_pole``       1/(x - a - i ieps_sign eps)
    """

    kind: str
    a: float = 0.0
    b: float = 0.0
    alpha: float = 0.0
    eps: float = 0.0
    ieps_sign: int = +1
    phase_sign: int = +1

    # -- factories ---------------------------------------------------------

    @staticmethod
    def delta(a: float = 0.0) -> "Dist1d":
        return Dist1d("delta", a=a)

    @staticmethod
    def plane_phase(alpha: float) -> "Dist1d":
        return Dist1d("plane_phase", alpha=alpha)

    @staticmethod
    def pv_pole(a: float = 0.0) -> "Dist1d":
        return Dist1d("pv_pole", a=a)

    @staticmethod
    def sgn() -> "Dist1d":
        return Dist1d("sgn")

    @staticmethod
    def heaviside() -> "Dist1d":
        return Dist1d("heaviside")

    @staticmethod
    def char_interval(a: float, b: float) -> "Dist1d":
        return Dist1d("char_interval", a=a, b=b)

    @staticmethod
    def windowed_phase(a: float, phase_sign: int = +1) -> "Dist1d":
        return Dist1d("windowed_phase", a=a, phase_sign=phase_sign)

    @staticmethod
    def damped_pole(a: float, eps: float, ieps_sign: int = +1) -> "Dist1d":
        return Dist1d("damped_pole", a=a, eps=eps, ieps_sign=ieps_sign)


def _support(u: TestFn, *extra: float) -> tuple[float, float]:
    lo, hi = u.axis_interval(0)
    for t in extra:
        lo, hi = min(lo, t - 1.0), max(hi, t + 1.0)
    return lo, hi


def pair_1d(dist: Dist1d, u: TestFn, cfg: QuadConfig = QuadConfig()) -> PairingResult:
    """Pairing <theta, u> for a catalogued 1d distribution."""
    if u.dim != 1:
        raise ValueError("pair_1d expects a 1-dimensional test function")
    lo, hi = _support(u)
    k = dist.kind
    if k == "delta":
        return PairingResult(complex(u(dist.a)), 0.0, 1, True)
    if k == "plane_phase":
        al = dist.alpha
        return integrate_1d(lambda x: u(x) * np.exp(1j * al * x), lo, hi, cfg)
    if k == "pv_pole":
        lo, hi = _support(u, dist.a)
        return integrate_pv(lambda x: u(x), dist.a, lo, hi, cfg)
    if k == "sgn":
        pos = integrate_1d(lambda x: u(x), 0.0, max(hi, 1.0), cfg)
        neg = integrate_1d(lambda x: u(x), min(lo, -1.0), 0.0, cfg)
        return pos + neg.scaled(-1.0)
    if k == "heaviside":
        return integrate_1d(lambda x: u(x), 0.0, max(hi, 1.0), cfg)
    if k == "char_interval":
        return integrate_1d(lambda x: u(x), dist.a, dist.b, cfg)
    if k == "windowed_phase":
        w = dist.phase_sign * dist.a
        f = lambda x: u(x) * np.exp(1j * w * x)
        if dist.a > 0:
            return integrate_1d(f, 0.0, max(hi, 1.0), cfg)
        return integrate_1d(f, min(lo, -1.0), 0.0, cfg)
    if k == "damped_pole":
        lo, hi = _support(u, dist.a)
        shift = dist.a + 1j * dist.ieps_sign * dist.eps
        return integrate_1d(lambda x: u(x) / (x - shift), lo, hi, cfg,
                            breakpoints=(dist.a,))
    raise ValueError(f"unknown 1d distribution kind {k!r}")


def sokhotski_ladder(a: float, ieps_sign: int, u: TestFn,
                     cfg: QuadConfig = QuadConfig()) -> PairingResult:
    """Extrapolated limit of <1/(x - a - i s eps), u> along the epsilon ladder.

    Converges to pv<1/(x-a), u> + i s pi u(a); the rung values are kept in
    ``info["rungs"]``.
    """
    lo, hi = _support(u, a)
    return integrate_pole_ladder(lambda x: u(x), a, ieps_sign,
                                 cfg.pv_epsilons(), lo, hi, cfg)


# ---------------------------------------------------------------------------
# transform-table verification
# ---------------------------------------------------------------------------

def _half_line_phase(u: TestFn, w: float, side: int, cfg: QuadConfig) -> PairingResult:
    """integral over the half-line {side*y > 0} of exp(i w y) u(y) dy."""
    lo, hi = _support(u)
    f = lambda y: u(y) * np.exp(1j * w * y)
    if side > 0:
        return integrate_1d(f, 0.0, max(hi, 1.0), cfg)
    return integrate_1d(f, min(lo, -1.0), 0.0, cfg)


def _row_checks(sign: int, u: TestFn, cfg: QuadConfig) -> dict[str, float]:
    """All table rows for one transform sign and one test function.

    Returns row name -> |adjoint-route - closed-form| .
    """
    s = sign
    fu = u.fourier(s)
    sq2pi = math.sqrt(2.0 * math.pi)
    out: dict[str, float] = {}

    # delta_b: F(delta_b) = (2 pi)^(-1/2) exp(-i s b y)
    b = 0.7
    lhs = pair_1d(Dist1d.delta(b), fu, cfg).value
    rhs = integrate_1d(lambda y: u(y) * np.exp(-1j * s * b * y),
                       *_support(u), cfg).value / sq2pi
    out["delta"] = abs(lhs - rhs)

    # plane phase: F(exp(i alpha x)) = sqrt(2 pi) delta at s*alpha
    al = 0.9
    lhs = pair_1d(Dist1d.plane_phase(al), fu, cfg).value
    rhs = sq2pi * u(s * al)
    out["plane_phase"] = abs(lhs - rhs)

    # pv pole: F(pv 1/(x-a)) = -i s sqrt(pi/2) sgn(y) exp(-i s a y)
    a = 0.4
    lhs = pair_1d(Dist1d.pv_pole(a), fu, cfg).value
    pos = _half_line_phase(u, -s * a, +1, cfg).value
    neg = _half_line_phase(u, -s * a, -1, cfg).value
    rhs = -1j * s * math.sqrt(math.pi / 2.0) * (pos - neg)
    out["pv_shift"] = abs(lhs - rhs)

    # sgn: F(sgn) = -i s sqrt(2/pi) pv(1/y)
    lhs = pair_1d(Dist1d.sgn(), fu, cfg).value
    pvy = pair_1d(Dist1d.pv_pole(0.0), u, cfg).value
    rhs = -1j * s * math.sqrt(2.0 / math.pi) * pvy
    out["sgn"] = abs(lhs - rhs)

    # heaviside: F(H) = (2 pi)^(-1/2) (pi delta - i s pv(1/y))
    lhs = pair_1d(Dist1d.heaviside(), fu, cfg).value
    rhs = (math.pi * u(0.0) - 1j * s * pvy) / sq2pi
    out["heaviside"] = abs(lhs - rhs)

    # indicator of [a, b]:
    # F(chi) = -i s (2 pi)^(-1/2) (exp(-i s a y) - exp(-i s b y)) pv(1/y)
    a2, b2 = -0.3, 1.1
    lhs = pair_1d(Dist1d.char_interval(a2, b2), fu, cfg).value
    lo, hi = _support(u, 0.0)
    num = lambda y: (np.exp(-1j * s * a2 * y) - np.exp(-1j * s * b2 * y)) * u(y)
    rhs = -1j * s / sq2pi * integrate_pv(num, 0.0, lo, hi, cfg).value
    out["char_interval"] = abs(lhs - rhs)

    # H(a x) exp(i p a x), both phase orientations and both window signs:
    # paired closed form (2 pi)^(-1/2) [pi u(s b) - i s sgn(a) pv<u/(y - s b)>]
    for p in (+1, -1):
        for a3 in (1.3, -1.3):
            b3 = p * a3
            lhs = pair_1d(Dist1d.windowed_phase(a3, p), fu, cfg).value
            lo, hi = _support(u, s * b3)
            pvb = integrate_pv(lambda y: u(y), s * b3, lo, hi, cfg).value
            rhs = (math.pi * u(s * b3) - 1j * s * math.copysign(1.0, a3) * pvb) / sq2pi
            key = f"windowed_phase{'+' if p > 0 else '-'}{'' if a3 > 0 else '_neg'}"
            out[key] = abs(lhs - rhs)

    # i-epsilon representations:
    # sqrt(2 pi) lim F(1/(x - a - i t eps)) = 2 pi i t H(-s t y) exp(-i s a y)
    a4 = 0.5
    for t in (+1, -1):
        rungs = []
        for eps in cfg.pv_epsilons():
            rungs.append(pair_1d(Dist1d.damped_pole(a4, eps, t), fu, cfg).value)
        limit, _ = richardson(rungs, cfg.pv_ratio, powers=(1, 2, 3, 4, 5, 6))
        lhs = sq2pi * limit
        half = _half_line_phase(u, -s * a4, -s * t, cfg).value
        rhs = 2.0 * math.pi * 1j * t * half
        out[f"ieps_rep{'+' if t > 0 else '-'}"] = abs(lhs - rhs)

    return out


def verify_ft_table(cfg: QuadConfig = QuadConfig(), seed: int = 0,
                    n_fns: int = 10, tol: float = 1e-6) -> dict:
    """Check every transform-table row against its closed form.

    For ``n_fns`` random test functions and both transform signs, each row
    is evaluated through the adjoint route and through its closed form;
    the report carries the worst absolute deviation per row.
    """
    rng = np.random.default_rng(seed)
    fns = [random_testfn(rng, 1) for _ in range(n_fns)]
    rows: dict[tuple[str, int], float] = {}
    for u in fns:
        for sign in (+1, -1):
            for name, err in _row_checks(sign, u, cfg).items():
                key = (name, sign)
                rows[key] = max(rows.get(key, 0.0), err)
    row_list = [
        {"row": name, "sign": "+" if sign > 0 else "-",
         "max_abs_err": err, "pass": bool(err <= tol)}
        for (name, sign), err in sorted(rows.items())
    ]
    worst = max(r["max_abs_err"] for r in row_list)
    return {
        "suite": "ft_table",
        "n_fns": n_fns,
        "seed": seed,
        "tol": tol,
        "rows": row_list,
        "max_abs_err": worst,
        "pass": bool(worst <= tol),
    }
