"""Mass-shell densities and pole families on momentum space.

For mass m >= 0 write E(rho) = sqrt(m^2 + rho^2), rho = |p_perp|.  The
module realizes, as pairing functionals against 4-dimensional test
functions,

* ``omega_leray(s)``  -- the Leray form on the shell sheet s = +-1:
                         <., u> = integral d^3p u(s E, p_perp),
* ``omega(s)``        -- the invariant half-density:
                         <., u> = s * integral d^3p / (2E) u(s E, p_perp),
* ``eps(s)``          -- omega(s) / (2 pi),
* ``epv(s)``          -- the principal-value pole family
                         <., u> = (1/4 pi^2) integral d^3p (1/E)
                                  pv integral dp0 u(p0, p_perp)/(p0 - s E),
* ``e``               -- epv(+) - epv(-)  (the even kernel pv 1/(g(p,p)-m^2)
                         up to the 1/4pi^2 normalization),
* ``opp(s1, s2)``     -- the i-epsilon family
                         lim_{eps->0+} integral d^4p u / (E (p0 + s1 E + s2 i eps)),
                         evaluated on the geometric epsilon ladder with all
                         rungs sharing every integrand evaluation, then
                         Richardson-extrapolated.

The same formulas at m = 0 read on position space (t, x_perp) with
r = |x_perp| in place of E define the light-cone twins; they are exposed
through ``space="position"`` and :func:`pair_position_m0`.

The Sokhotski decompositions link the families:

    opp(-,-) = (2 pi)^2 (epv+ + i eps+)      opp(-,+) = (2 pi)^2 (epv+ - i eps+)
    opp(+,-) = (2 pi)^2 (epv- - i eps-)      opp(+,+) = (2 pi)^2 (epv- + i eps-)

checked numerically by :func:`check_opp_decomposition`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._kernels import eval_packet_bundle
from .core import as_mass
from .quadrature import (
    AngularIntegrator,
    PairingResult,
    QuadConfig,
    gaussian_pole_pv_moments,
    integrate_1d,
    integrate_pv,
    richardson,
)
from .testfns import TestFn, TestFnBundle, random_testfn

__all__ = [
    "MomShellDist",
    "pair_momentum",
    "pair_position_m0",
    "pair_shell_dist",
    "check_opp_decomposition",
    "shell_pair_callable",
]

_FAMILIES = ("omega_leray", "omega", "eps", "epv", "e", "opp")

_N_SIGMA = 16.0  # Gaussian support padding, matches TestFn.axis_interval


@dataclass(frozen=True)
class MomShellDist:
    """A shell or pole density: family name, sheet signs, mass, space.

    ``sign`` is the shell sheet (or pole side) for the signed families;
    ``s2`` is the i-epsilon side for ``opp``.  ``space`` is ``"momentum"``
    or ``"position"`` (the latter restricted to mass 0, the light-cone
    twins).
    """

    family: str
    mass: float
    sign: int = +1
    s2: int = +1
    space: str = "momentum"

    def __post_init__(self) -> None:
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.space not in ("momentum", "position"):
            raise ValueError(f"space must be momentum or position, got {self.space!r}")
        if self.space == "position" and as_mass(self.mass) != 0.0:
            raise ValueError("position-space twins exist only at mass 0")
        if self.sign not in (+1, -1) or self.s2 not in (+1, -1):
            raise ValueError("signs must be +1 or -1")
        as_mass(self.mass)

    # factories ------------------------------------------------------------

    @staticmethod
    def omega_leray(sign: int, mass: float, space: str = "momentum") -> "MomShellDist":
        return MomShellDist("omega_leray", mass, sign=sign, space=space)

    @staticmethod
    def omega(sign: int, mass: float, space: str = "momentum") -> "MomShellDist":
        return MomShellDist("omega", mass, sign=sign, space=space)

    @staticmethod
    def eps(sign: int, mass: float, space: str = "momentum") -> "MomShellDist":
        return MomShellDist("eps", mass, sign=sign, space=space)

    @staticmethod
    def epv(sign: int, mass: float, space: str = "momentum") -> "MomShellDist":
        return MomShellDist("epv", mass, sign=sign, space=space)

    @staticmethod
    def e_full(mass: float, space: str = "momentum") -> "MomShellDist":
        return MomShellDist("e", mass, space=space)

    @staticmethod
    def opp(s1: int, s2: int, mass: float, space: str = "momentum") -> "MomShellDist":
        return MomShellDist("opp", mass, sign=s1, s2=s2, space=space)

    @staticmethod
    def from_name(name: str, mass: float) -> "MomShellDist":
        """Parse the CLI grammar: omega+/-, eps+/-, epv+/-, e, opp(ss),
        with an optional ``@pos`` suffix selecting the position twins."""
        space = "momentum"
        base = name
        if name.endswith("@pos"):
            space, base = "position", name[: -len("@pos")]
        signs = {"+": +1, "-": -1}
        if base in ("e",):
            return MomShellDist.e_full(mass, space)
        if len(base) >= 2 and base[:-1] in ("omega", "eps", "epv") and base[-1] in signs:
            fam = base[:-1]
            return MomShellDist(fam, mass, sign=signs[base[-1]], space=space)
        if len(base) == 5 and base.startswith("opp") and base[3] in signs and base[4] in signs:
            return MomShellDist.opp(signs[base[3]], signs[base[4]], mass, space)
        raise ValueError(f"unknown distribution name {name!r}")


# ---------------------------------------------------------------------------
# generic engines (shared by momentum space and the position twins)
# ---------------------------------------------------------------------------

def _spatial_radius(v) -> float:
    if hasattr(v, "spatial_radius"):
        return float(v.spatial_radius())
    center = np.asarray(v.center, dtype=float)
    widths = np.asarray(v.widths, dtype=float)
    return float(np.linalg.norm(center[1:]) + _N_SIGMA * widths[1:].max())


def _sheet_radius(v, sign: int, m: float) -> float:
    """Radial truncation for integrands pinned to the sheet p0 = sign*E."""
    r_spatial = _spatial_radius(v)
    if hasattr(v, "axis_interval"):
        lo, hi = v.axis_interval(0)
        e_max = hi if sign > 0 else -lo
        if e_max <= m:
            return min(r_spatial, 1.0)  # sheet misses the time support
        return min(r_spatial, math.sqrt(e_max * e_max - m * m))
    return r_spatial


def _sheet_points(rhos: np.ndarray, dirs: np.ndarray, sign: int, m: float) -> np.ndarray:
    """4-points (p0, p_perp) = (sign E(rho), rho * direction), flattened."""
    r, q = len(rhos), len(dirs)
    pts = np.empty((r, q, 4))
    e = np.sqrt(m * m + rhos * rhos)
    pts[:, :, 0] = sign * e[:, None]
    pts[:, :, 1:] = rhos[:, None, None] * dirs[None, :, :]
    return pts.reshape(r * q, 4)


def shell_pair_callable(v, sign: int, m: float, cfg: QuadConfig,
                        weight, r_max: float | None = None) -> PairingResult:
    """integral_0^R drho rho^2 weight(rho, E) * integral dOmega v(sign*E, rho w).

    ``v`` is any batch-callable on (N, 4) points exposing
    ``spatial_radius()`` (and optionally ``axis_interval(0)`` for a sheet
    energy cut); vector-valued ``v`` (N, K) is supported and returns a
    vector result.
    """
    m = as_mass(m)
    if r_max is None:
        r_max = _sheet_radius(v, sign, m)
    ang = AngularIntegrator(abs_tol=cfg.abs_tol * 1e-2)

    def eval_fn(rhos, dirs):
        vals = np.asarray(v(_sheet_points(rhos, dirs, sign, m)))
        if vals.ndim == 1:
            return vals.reshape(len(rhos), len(dirs))
        return vals.reshape(len(rhos), len(dirs), -1)

    def g(rhos):
        e = np.sqrt(m * m + rhos * rhos)
        w = rhos * rhos * weight(rhos, e)
        sphere = ang.integrate(eval_fn, rhos)
        return sphere * (w[:, None] if sphere.ndim == 2 else w)

    res = integrate_1d(g, 0.0, max(r_max, 1e-6), cfg)
    ang_err = ang.worst_residual * max(r_max, 1e-6) ** 3 / 3.0
    return PairingResult(res.value, res.abs_err + ang_err,
                         res.evaluations + ang.evaluations, res.converged)


def _pole_axis_domain(v, pole: float) -> tuple[float, float]:
    lo, hi = v.axis_interval(0)
    return min(lo, pole - 1.0), max(hi, pole + 1.0)


class PacketSplit(NamedTuple):
    """Per-term time/spatial factorization of a 4d packet."""

    ctab: np.ndarray          # (members, terms) coefficients
    time_table: object        # p0s -> (P, T) time factors
    spatial_eval: object      # pts3 -> (N, T) spatial factors
    lo0: float                # time-axis support
    hi0: float
    a0: np.ndarray            # per-term time exponents (int)
    c0: float                 # shared time center
    s0: float                 # shared time width
    k0: float                 # shared time phase


def _split_time_spatial(v):
    """Factor a 4d packet into per-term time profiles and spatial parts.

    Pole-family integrands couple a principal-value integral in p0 to a
    sphere integral over directions; for a packet both factor per
    monomial term, so the sphere pass only has to produce the per-term
    spatial moments and the p0 integrand becomes a dense closed-form
    table.  Returns a :class:`PacketSplit`, or ``None`` if ``v`` has no
    packet structure (callers then evaluate ``v`` directly).
    """
    if isinstance(v, TestFn):
        ctab = np.asarray(v.coeffs, dtype=complex)[None, :]
    elif isinstance(v, TestFnBundle):
        ctab = v.coeff_table
    else:
        return None
    if v.dim != 4:
        return None
    alphas = np.asarray(v.alphas, dtype=np.int64)
    center = np.asarray(v.center, dtype=float)
    widths = np.asarray(v.widths, dtype=float)
    phase = np.asarray(v.phase, dtype=float)
    a0 = alphas[:, 0].astype(float)
    c0, s0, k0 = center[0], widths[0], phase[0]
    term_eye = np.eye(alphas.shape[0], dtype=complex)
    alphas3 = np.ascontiguousarray(alphas[:, 1:])
    center3 = np.ascontiguousarray(center[1:])
    inv_two_sig2 = np.ascontiguousarray(0.5 / (widths[1:] * widths[1:]))
    phase3 = np.ascontiguousarray(phase[1:])

    def time_table(p0s: np.ndarray) -> np.ndarray:
        p0s = np.asarray(p0s, dtype=float)
        d = p0s - c0
        damp = np.exp(-(d * d) / (2.0 * s0 * s0) + 1j * k0 * p0s)
        return (d[:, None] ** a0[None, :]) * damp[:, None]

    def spatial_eval(pts: np.ndarray) -> np.ndarray:
        return eval_packet_bundle(pts, term_eye, alphas3, center3,
                                  inv_two_sig2, phase3)

    lo0, hi0 = c0 - _N_SIGMA * s0, c0 + _N_SIGMA * s0
    return PacketSplit(ctab, time_table, spatial_eval, lo0, hi0,
                       alphas[:, 0], float(c0), float(s0), float(k0))


def _pair_pole_family(v, sign: int, m: float, cfg: QuadConfig) -> PairingResult:
    """(1/4 pi^2) int drho rho^2/E * pv int dp0 [int dOmega v] / (p0 - sign E).

    The sphere pass produces per-term spatial moments and the p0
    principal-value integral of each Gaussian time profile is closed
    form (:func:`gaussian_pole_pv_moments`), so only the radial integral
    is adaptive.
    """
    m = as_mass(m)
    split = _split_time_spatial(v)
    if split is None:
        return _pair_pole_family_direct(v, sign, m, cfg)
    n_b, n_t = split.ctab.shape
    r_max = max(_spatial_radius(v), 1e-6)
    ang = AngularIntegrator(abs_tol=cfg.abs_tol * 1e-2)
    n_max = int(split.a0.max()) if len(split.a0) else 0
    idx = split.a0.astype(np.int64)
    phase_c = complex(np.exp(1j * split.k0 * split.c0))

    def eval_fn(rhos, dirs):
        pts = (rhos[:, None, None] * dirs[None, :, :]).reshape(-1, 3)
        return np.asarray(split.spatial_eval(pts)).reshape(
            len(rhos), len(dirs), n_t)

    def g(rhos):
        smom = ang.integrate(eval_fn, rhos)  # (R, T) spatial moments
        e = np.sqrt(m * m + rhos * rhos)
        qmom = gaussian_pole_pv_moments(sign * e - split.c0, split.s0,
                                        split.k0, n_max)
        out = (smom * (phase_c * qmom[:, idx])) @ split.ctab.T
        out *= (rhos * rhos / e)[:, None]
        return np.squeeze(out, axis=1) if n_b == 1 else out

    res = integrate_1d(g, 0.0, r_max, cfg)
    pref = 1.0 / (4.0 * math.pi ** 2)
    ang_err = ang.worst_residual * r_max ** 3 / 3.0
    return PairingResult(pref * res.value, pref * (res.abs_err + ang_err),
                         res.evaluations + ang.evaluations, res.converged)


def _pair_pole_pair(v, m: float, cfg: QuadConfig) -> dict[int, PairingResult]:
    """Both pole families (sign = +1 and -1) in a single radial pass.

    The sphere moments are pole-independent and dominate the cost, so
    evaluating the two pole weightings as one vector integrand halves
    the work of the difference density e = epv(+) - epv(-).
    """
    m = as_mass(m)
    split = _split_time_spatial(v)
    if split is None:
        return {s: _pair_pole_family_direct(v, s, m, cfg) for s in (+1, -1)}
    n_b, n_t = split.ctab.shape
    r_max = max(_spatial_radius(v), 1e-6)
    ang = AngularIntegrator(abs_tol=cfg.abs_tol * 1e-2)
    n_max = int(split.a0.max()) if len(split.a0) else 0
    idx = split.a0.astype(np.int64)
    phase_c = complex(np.exp(1j * split.k0 * split.c0))

    def eval_fn(rhos, dirs):
        pts = (rhos[:, None, None] * dirs[None, :, :]).reshape(-1, 3)
        return np.asarray(split.spatial_eval(pts)).reshape(
            len(rhos), len(dirs), n_t)

    def g(rhos):
        smom = ang.integrate(eval_fn, rhos)  # (R, T) spatial moments
        e = np.sqrt(m * m + rhos * rhos)
        w = rhos * rhos / e
        cols = []
        for s in (+1, -1):
            qmom = gaussian_pole_pv_moments(s * e - split.c0, split.s0,
                                            split.k0, n_max)
            cols.append(((smom * (phase_c * qmom[:, idx])) @ split.ctab.T)
                        * w[:, None])
        return np.concatenate(cols, axis=1)

    res = integrate_1d(g, 0.0, r_max, cfg)
    pref = 1.0 / (4.0 * math.pi ** 2)
    ang_err = ang.worst_residual * r_max ** 3 / 3.0
    vals = np.asarray(res.value).reshape(2, n_b)
    out = {}
    for row, s in enumerate((+1, -1)):
        val = vals[row, 0] if n_b == 1 else vals[row]
        out[s] = PairingResult(pref * val, pref * (res.abs_err + ang_err),
                               res.evaluations + ang.evaluations,
                               res.converged)
    return out


def _pair_pole_family_direct(v, sign: int, m: float, cfg: QuadConfig) -> PairingResult:
    """Direct-evaluation pole pairing for integrands without packet structure."""
    m = as_mass(m)
    r_max = _spatial_radius(v)
    ang = AngularIntegrator(abs_tol=cfg.abs_tol * 1e-2)
    inner_cfg = cfg.tighter(0.05)
    evals = 0
    conv = True

    def g(rhos):
        nonlocal evals, conv
        out = None
        for i, rho in enumerate(rhos):
            def eval_fn(p0s, dirs, rho=rho):
                r, q = len(p0s), len(dirs)
                pts = np.empty((r, q, 4))
                pts[:, :, 0] = p0s[:, None]
                pts[:, :, 1:] = rho * dirs[None, :, :]
                vals = np.asarray(v(pts.reshape(r * q, 4)))
                if vals.ndim == 1:
                    return vals.reshape(r, q)
                return vals.reshape(r, q, -1)

            pole = sign * math.sqrt(m * m + rho * rho)
            lo, hi = _pole_axis_domain(v, pole)
            numer = lambda p0s: ang.integrate(eval_fn, p0s)
            res = integrate_pv(numer, pole, lo, hi, inner_cfg)
            evals += res.evaluations
            conv = conv and res.converged
            val = np.atleast_1d(np.asarray(res.value))
            if out is None:
                out = np.zeros((len(rhos), val.size), dtype=complex)
            out[i] = val
        e = np.sqrt(m * m + rhos * rhos)
        return np.squeeze(out * (rhos * rhos / e)[:, None]) if out.shape[1] == 1 \
            else out * (rhos * rhos / e)[:, None]

    res = integrate_1d(g, 0.0, max(r_max, 1e-6), cfg)
    pref = 1.0 / (4.0 * math.pi ** 2)
    ang_err = ang.worst_residual * max(r_max, 1e-6) ** 3 / 3.0
    return PairingResult(pref * res.value, pref * (res.abs_err + ang_err),
                         res.evaluations + evals + ang.evaluations,
                         res.converged and conv)


def _pair_opp_both(v, s1: int, m: float, cfg: QuadConfig) -> dict[int, PairingResult]:
    """opp(s1, +) and opp(s1, -) from one shared-evaluation ladder run.

    The inner p0 integral carries all 24 regularized kernels (12 epsilon
    rungs for each i-epsilon side) as one vector integrand; the outer
    radial integral transports the whole vector; each side is then
    extrapolated with the full power sequence.  Packet integrands use
    the time/spatial factorization of :func:`_split_time_spatial`.
    """
    m = as_mass(m)
    r_max = _spatial_radius(v)
    ang = AngularIntegrator(abs_tol=cfg.abs_tol * 1e-2)
    inner_cfg = cfg.tighter(0.05)
    epss = cfg.pv_epsilons()
    shifts = np.concatenate([1j * epss, -1j * epss])  # +ieps rungs then -ieps
    evals = 0
    conv = True
    split = _split_time_spatial(v)
    if split is not None and split[0].shape[0] != 1:
        split = None  # the rung axis is the vector slot; bundles go direct

    def g_packet(rhos, parts):
        nonlocal evals, conv
        ctab, time_table, spatial_eval, lo0, hi0 = parts[:5]
        n_t = ctab.shape[1]

        def eval_fn(rr, dirs):
            pts = (rr[:, None, None] * dirs[None, :, :]).reshape(-1, 3)
            return np.asarray(spatial_eval(pts)).reshape(len(rr), len(dirs), n_t)

        smom = ang.integrate(eval_fn, rhos)  # (R, T)
        out = np.empty((len(rhos), shifts.size), dtype=complex)
        for i, rho in enumerate(rhos):
            pole = -s1 * math.sqrt(m * m + rho * rho)
            lo, hi = min(lo0, pole - 1.0), max(hi0, pole + 1.0)

            def f(p0s, srow=smom[i], pole=pole):
                a = (time_table(p0s) * srow[None, :]) @ ctab.T  # (P, 1)
                return a / (p0s[:, None] - pole + shifts[None, :])

            res = integrate_1d(f, lo, hi, inner_cfg, breakpoints=(pole,))
            evals += res.evaluations
            conv = conv and res.converged
            out[i] = res.value
        return out

    def g_direct(rhos):
        nonlocal evals, conv
        out = np.empty((len(rhos), shifts.size), dtype=complex)
        for i, rho in enumerate(rhos):
            def eval_fn(p0s, dirs, rho=rho):
                r, q = len(p0s), len(dirs)
                pts = np.empty((r, q, 4))
                pts[:, :, 0] = p0s[:, None]
                pts[:, :, 1:] = rho * dirs[None, :, :]
                return np.asarray(v(pts.reshape(r * q, 4))).reshape(r, q)

            pole = -s1 * math.sqrt(m * m + rho * rho)
            lo, hi = _pole_axis_domain(v, pole)

            def f(p0s):
                a = ang.integrate(eval_fn, p0s)
                return a[:, None] / (p0s[:, None] - pole + shifts[None, :])

            res = integrate_1d(f, lo, hi, inner_cfg, breakpoints=(pole,))
            evals += res.evaluations
            conv = conv and res.converged
            out[i] = res.value
        return out

    def g(rhos):
        out = g_direct(rhos) if split is None else g_packet(rhos, split)
        e = np.sqrt(m * m + rhos * rhos)
        return out * (rhos * rhos / e)[:, None]

    res = integrate_1d(g, 0.0, max(r_max, 1e-6), cfg)
    rungs = np.asarray(res.value)
    n = len(epss)
    ratio = cfg.pv_ratio
    out: dict[int, PairingResult] = {}
    for s2, sl in ((+1, rungs[:n]), (-1, rungs[n:])):
        limit, spread = richardson(sl, ratio, powers=(1, 2, 3, 4, 5, 6))
        err = res.abs_err + spread
        ok = conv and res.converged and err <= max(cfg.abs_tol * 10, cfg.rel_tol * abs(limit))
        out[s2] = PairingResult(limit, err, res.evaluations + evals, bool(ok),
                                info={"rungs": sl, "ladder_spread": spread,
                                      "epsilons": epss})
    return out


# ---------------------------------------------------------------------------
# public pairings
# ---------------------------------------------------------------------------

def pair_shell_dist(dist: MomShellDist, u: TestFn,
                    cfg: QuadConfig = QuadConfig()) -> PairingResult:
    """Pairing <dist, u> for any catalogued shell/pole density."""
    if u.dim != 4:
        raise ValueError("shell densities pair with 4-dimensional test functions")
    m = as_mass(dist.mass)
    fam, s = dist.family, dist.sign
    if fam == "omega_leray":
        return shell_pair_callable(u, s, m, cfg, lambda rho, e: np.ones_like(rho))
    if fam == "omega":
        return shell_pair_callable(u, s, m, cfg, lambda rho, e: 0.5 / e).scaled(s)
    if fam == "eps":
        w = 1.0 / (2.0 * math.pi)
        return shell_pair_callable(u, s, m, cfg, lambda rho, e: 0.5 / e).scaled(s * w)
    if fam == "epv":
        return _pair_pole_family(u, s, m, cfg)
    if fam == "e":
        both = _pair_pole_pair(u, m, cfg)
        return both[+1] + both[-1].scaled(-1.0)
    if fam == "opp":
        return _pair_opp_both(u, s, m, cfg)[dist.s2]
    raise ValueError(f"unknown family {fam!r}")


def pair_momentum(dist: MomShellDist, u: TestFn,
                  cfg: QuadConfig = QuadConfig()) -> PairingResult:
    """Momentum-space pairing; requires ``dist.space == "momentum"``."""
    if dist.space != "momentum":
        raise ValueError("pair_momentum expects a momentum-space density")
    return pair_shell_dist(dist, u, cfg)


def pair_position_m0(dist: MomShellDist, u: TestFn,
                     cfg: QuadConfig = QuadConfig()) -> PairingResult:
    """Position-space pairing of the light-cone twins (mass 0 only).

    The integrals are the momentum formulas with (p0, p_perp) read as
    (t, x_perp) and E replaced by r = |x_perp|.
    """
    if dist.space != "position":
        raise ValueError("pair_position_m0 expects a position-space density")
    return pair_shell_dist(dist, u, cfg)


def check_opp_decomposition(mass: float, cfg: QuadConfig = QuadConfig(),
                            seed: int = 0, n_fns: int = 10,
                            tol: float = 1e-5, spread_tol: float = 1e-6,
                            space: str = "momentum") -> dict:
    """Verify the four Sokhotski decompositions of the opp family.

    For each random test function the four opp pairings are evaluated by
    the epsilon ladder and compared against (2 pi)^2 (epv(s) -+ i eps(s));
    the report records the worst identity residual and the worst ladder
    extrapolation spread.
    """
    m = as_mass(mass)
    rng = np.random.default_rng(seed)
    four_pi2 = (2.0 * math.pi) ** 2
    worst = {(-1, -1): 0.0, (-1, +1): 0.0, (+1, -1): 0.0, (+1, +1): 0.0}
    worst_spread = 0.0
    for _ in range(n_fns):
        u = random_testfn(rng, 4)
        epv = {s: pair_shell_dist(MomShellDist("epv", m, sign=s, space=space), u, cfg).value
               for s in (+1, -1)}
        eps = {s: pair_shell_dist(MomShellDist("eps", m, sign=s, space=space), u, cfg).value
               for s in (+1, -1)}
        for s1 in (+1, -1):
            both = _pair_opp_both(u, s1, m, cfg)
            sheet = -s1  # pole p0 = -s1 E sits on the sheet sign -s1
            for s2, res in both.items():
                # 1/(x - x0 + s2 i eps) -> pv - s2 i pi delta, and the sheet
                # delta integral carries a factor -s1 from eps(-s1)'s sign
                sok = s1 * s2
                want = four_pi2 * (epv[sheet] + sok * 1j * eps[sheet])
                worst[(s1, s2)] = max(worst[(s1, s2)], abs(res.value - want))
                worst_spread = max(worst_spread, res.info["ladder_spread"])
    identities = [
        {"opp": f"opp{'+' if s1 > 0 else '-'}{'+' if s2 > 0 else '-'}",
         "max_abs_err": err, "pass": bool(err <= tol)}
        for (s1, s2), err in sorted(worst.items())
    ]
    ok = all(i["pass"] for i in identities) and worst_spread <= spread_tol
    return {
        "suite": "opp_decomposition",
        "mass": m,
        "space": space,
        "n_fns": n_fns,
        "seed": seed,
        "tol": tol,
        "spread_tol": spread_tol,
        "identities": identities,
        "max_ladder_spread": worst_spread,
        "pass": bool(ok),
    }
