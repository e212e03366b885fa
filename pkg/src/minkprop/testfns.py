"""Gaussian-Hermite test functions and their closed-form calculus.

A test function is a single "packet"

    u(x) = sum_t c_t * prod_i (x_i - c_i)^(alpha_t,i)
           * exp(-sum_i (x_i - c_i)^2 / (2 sigma_i^2)) * exp(i k.x)

with complex coefficients ``c_t``, multi-indices ``alpha_t``, a common
center ``c``, anisotropic widths ``sigma`` and a plane-wave vector ``k``.
The family (dimensions 1, 3 and 4; polynomial degree at most 6) is closed
under

* partial derivatives and the operator (box + m^2),
* translation, reflection through the origin, complex conjugation,
* the Fourier transforms F+ / F- and partial transforms along any axis
  subset,

all realized exactly on the parameters -- no quadrature is involved.  The
Fourier convention is

    (F+- u)(y) = (2 pi)^(-m/2) * integral exp(-+ i <y, x>) u(x) dx

with the all-plus duality pairing <y, x>; F-+ inverts F+-.

A one-dimensional factor transforms via probabilists' Hermite polynomials:

    integral u^n exp(-u^2/(2 s^2)) exp(i w u) du
        = s sqrt(2 pi) (i s)^n He_n(s w) exp(-s^2 w^2 / 2),

which is what makes the family Fourier-stable with widths 1/sigma_i.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels

__all__ = [
    "TestFn",
    "TestFnBundle",
    "random_testfn",
    "MAX_DEGREE",
]

#: Maximum total polynomial degree the closed operations may produce.
MAX_DEGREE = 6

#: Maximum total degree accepted for *input* test functions (JSON, random).
MAX_INPUT_DEGREE = 4


def _hermite_coeffs(n_max: int) -> list[list[int]]:
    """Coefficient rows of probabilists' Hermite polynomials He_n.

    Row n holds integers h[n][j] with He_n(z) = sum_j h[n][j] z^j.
    Built from He_{n+1} = z He_n - n He_{n-1}.
    """
    rows = [[1], [0, 1]]
    for n in range(1, n_max):
        prev, cur = rows[n - 1], rows[n]
        nxt = [0] * (n + 2)
        for j, h in enumerate(cur):
            nxt[j + 1] += h
        for j, h in enumerate(prev):
            nxt[j] -= n * h
        rows.append(nxt)
    return rows


_HE = _hermite_coeffs(MAX_DEGREE + 1)


def _axis_transform_matrix(sigma: float, s: int, n_max: int) -> np.ndarray:
    """Mixing matrix A[n, j] for one transformed axis.

    The transform of the axis factor u^n (u = x - c) contributes the
    polynomial (i sigma)^n He_n(sigma * s * (y - c~)) in the new variable;
    A[n, j] is its coefficient on (y - c~)^j.
    """
    a = np.zeros((n_max + 1, n_max + 1), dtype=complex)
    for n in range(n_max + 1):
        pref = (1j * sigma) ** n
        for j, h in enumerate(_HE[n]):
            if h:
                a[n, j] = pref * h * (sigma * s) ** j
    return a


@dataclass(frozen=True, eq=False)
class TestFn:
    """One Gaussian-Hermite packet; see the module docstring for the form.

    Attributes
    ----------
    dim : int
        Ambient dimension (1, 3 or 4).
    coeffs : (T,) complex ndarray
        Term coefficients.
    alphas : (T, dim) int ndarray
        Term multi-indices.
    center, widths, phase : (dim,) float ndarrays
        Gaussian center c, per-axis widths sigma_i > 0, plane-wave vector k.
    """

    dim: int
    coeffs: np.ndarray
    alphas: np.ndarray
    center: np.ndarray
    widths: np.ndarray
    phase: np.ndarray

    def __post_init__(self) -> None:
        d = int(self.dim)
        coeffs = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        alphas = np.asarray(self.alphas, dtype=np.int64).reshape(len(coeffs), d)
        center = np.asarray(self.center, dtype=float).reshape(d)
        widths = np.asarray(self.widths, dtype=float).reshape(d)
        phase = np.asarray(self.phase, dtype=float).reshape(d)
        if np.any(widths <= 0) or not np.all(np.isfinite(widths)):
            raise ValueError("widths must be positive and finite")
        if np.any(alphas < 0):
            raise ValueError("multi-indices must be non-negative")
        if alphas.sum(axis=1).max(initial=0) > MAX_DEGREE:
            raise ValueError(f"total polynomial degree exceeds cap {MAX_DEGREE}")
        # canonical form: merge duplicate multi-indices, drop zero terms,
        # sort lexicographically (makes serialization deterministic)
        order = np.lexsort(alphas.T[::-1])
        alphas, coeffs = alphas[order], coeffs[order]
        keep_a: list[np.ndarray] = []
        keep_c: list[complex] = []
        for a, cf in zip(alphas, coeffs):
            if keep_a and np.array_equal(keep_a[-1], a):
                keep_c[-1] += cf
            else:
                keep_a.append(a)
                keep_c.append(cf)
        alphas = np.array(keep_a, dtype=np.int64).reshape(-1, d)
        coeffs = np.array(keep_c, dtype=complex)
        nz = np.abs(coeffs) > 0.0
        if not nz.any():
            alphas, coeffs = np.zeros((1, d), dtype=np.int64), np.zeros(1, dtype=complex)
        else:
            alphas, coeffs = alphas[nz], coeffs[nz]
        for name, val in (
            ("dim", d), ("coeffs", coeffs), ("alphas", alphas),
            ("center", center), ("widths", widths), ("phase", phase),
        ):
            object.__setattr__(self, name, val)
        for arr in (coeffs, alphas, center, widths, phase):
            arr.setflags(write=False)

    # -- evaluation ---------------------------------------------------------

    @property
    def inv_two_sig2(self) -> np.ndarray:
        return 0.5 / (self.widths * self.widths)

    def __call__(self, x) -> complex | np.ndarray:
        """Evaluate at a point (dim,) or a batch (N, dim).

        For dim == 1 a 1-d array is a batch of scalar points; a python
        scalar or 0-d array is a single point.
        """
        x = np.asarray(x, dtype=float)
        single = x.ndim == 0 or (x.ndim == 1 and self.dim > 1)
        pts = np.ascontiguousarray(x.reshape(-1, self.dim))
        out = _kernels.eval_packet(
            pts, self.coeffs, self.alphas, self.center, self.inv_two_sig2, self.phase
        )
        return complex(out[0]) if single else out

    def at_zero(self) -> complex:
        """u(0)."""
        return complex(self(np.zeros(self.dim)))

    # -- closed operations --------------------------------------------------

    def _with(self, coeffs, alphas, center=None, widths=None, phase=None) -> "TestFn":
        return TestFn(
            self.dim, coeffs, alphas,
            self.center if center is None else center,
            self.widths if widths is None else widths,
            self.phase if phase is None else phase,
        )

    def derivative(self, axis: int) -> "TestFn":
        """Partial derivative along ``axis`` (exact on parameters).

        Each term (x-c)^a splits into three: the product-rule monomial
        drop, the Gaussian pull-down -(x_i - c_i)/sigma_i^2, and the phase
        factor i k_i.
        """
        e = np.zeros(self.dim, dtype=np.int64)
        e[axis] = 1
        new_a: list[np.ndarray] = []
        new_c: list[complex] = []
        inv_s2 = 1.0 / self.widths[axis] ** 2
        k_i = self.phase[axis]
        for a, cf in zip(self.alphas, self.coeffs):
            if a[axis] > 0:
                new_a.append(a - e)
                new_c.append(cf * a[axis])
            new_a.append(a + e)
            new_c.append(-cf * inv_s2)
            if k_i != 0.0:
                new_a.append(a.copy())
                new_c.append(1j * k_i * cf)
        return self._with(np.array(new_c), np.array(new_a).reshape(-1, self.dim))

    def box_plus_m2(self, mass: float) -> "TestFn":
        """Apply (box + m^2) = d_0 d_0 - sum_i d_i d_i + m^2."""
        out = self.derivative(0).derivative(0)
        acc_c = [out.coeffs]
        acc_a = [out.alphas]
        for i in range(1, self.dim):
            dd = self.derivative(i).derivative(i)
            acc_c.append(-dd.coeffs)
            acc_a.append(dd.alphas)
        m = float(mass)
        if m != 0.0:
            acc_c.append(m * m * self.coeffs)
            acc_a.append(self.alphas)
        return self._with(np.concatenate(acc_c), np.concatenate(acc_a))

    def translate(self, shift) -> "TestFn":
        """u(. - shift): center moves by shift, coefficients pick e^{-i k.b}."""
        b = np.asarray(shift, dtype=float).reshape(self.dim)
        fold = np.exp(-1j * float(self.phase @ b))
        return self._with(self.coeffs * fold, self.alphas, center=self.center + b)

    def reflect(self) -> "TestFn":
        """u(-x): center and phase flip, each term gains (-1)^|alpha|."""
        signs = np.where(self.alphas.sum(axis=1) % 2 == 0, 1.0, -1.0)
        return self._with(
            self.coeffs * signs, self.alphas, center=-self.center, phase=-self.phase
        )

    def conjugate(self) -> "TestFn":
        """Pointwise complex conjugate."""
        return self._with(np.conj(self.coeffs), self.alphas, phase=-self.phase)

    def fourier(self, sign: int) -> "TestFn":
        """Full Fourier transform F+ (sign=+1) or F- (sign=-1)."""
        return self.partial_fourier(sign, tuple(range(self.dim)))

    def partial_fourier(self, sign: int, axes: tuple[int, ...]) -> "TestFn":
        """Fourier transform along a subset of axes.

        Transformed axes map (center, width, phase) -> (sign*k_i, 1/sigma_i,
        -sign*c_i); the polynomial exponents mix within each transformed
        axis through the Hermite matrices; untouched axes keep their
        parameters and exponents.  Transforms along disjoint axis subsets
        commute.
        """
        if sign not in (+1, -1):
            raise ValueError("sign must be +1 or -1")
        axes = tuple(sorted(set(int(a) for a in axes)))
        if not axes:
            return self
        if any(a < 0 or a >= self.dim for a in axes):
            raise ValueError(f"axes out of range for dim {self.dim}")
        s = -sign  # omega_i = s * (y_i - center~_i)
        n_max = int(self.alphas[:, list(axes)].max(initial=0))
        mats = {i: _axis_transform_matrix(self.widths[i], s, n_max) for i in axes}
        const = complex(np.prod([self.widths[i] for i in axes]))
        const *= np.exp(1j * sum(self.phase[i] * self.center[i] for i in axes))

        center = self.center.copy()
        widths = self.widths.copy()
        phase = self.phase.copy()
        for i in axes:
            center[i] = sign * self.phase[i]
            widths[i] = 1.0 / self.widths[i]
            phase[i] = -sign * self.center[i]

        new_a: list[tuple[int, ...]] = []
        new_c: list[complex] = []
        for a, cf in zip(self.alphas, self.coeffs):
            partial = [(tuple(a), cf * const)]
            for i in axes:
                nxt: dict[tuple[int, ...], complex] = {}
                for idx, w in partial:
                    row = mats[i][idx[i]]
                    for j in range(idx[i] + 1):
                        if row[j] != 0:
                            jdx = list(idx)
                            jdx[i] = j
                            key = tuple(jdx)
                            nxt[key] = nxt.get(key, 0.0) + w * row[j]
                partial = list(nxt.items())
            for idx, w in partial:
                new_a.append(idx)
                new_c.append(w)
        return TestFn(
            self.dim, np.array(new_c), np.array(new_a, dtype=np.int64).reshape(-1, self.dim),
            center, widths, phase,
        )

    # -- norms and supports --------------------------------------------------

    def l2_norm(self) -> float:
        """Exact L^2 norm, via even Gaussian moments (phases cancel)."""
        two = self.alphas[:, None, :] + self.alphas[None, :, :]   # (T, T, d)
        moments = _central_moment_table(self.widths, int(two.max()))
        mom = np.prod(moments[two, np.arange(self.dim)[None, None, :]], axis=-1)
        gram = np.real(self.coeffs[:, None] * np.conj(self.coeffs)[None, :] * mom).sum()
        return math.sqrt(max(gram, 0.0))

    def l1_norm(self) -> float:
        """Exact L^1 norm for a pure Gaussian term (no polynomial part)."""
        if len(self.coeffs) != 1 or self.alphas.sum() != 0:
            raise ValueError("closed-form L1 norm requires a polynomial-free packet")
        return float(abs(self.coeffs[0]) * np.prod(np.sqrt(2.0 * math.pi) * self.widths))

    def axis_interval(self, axis: int, n_sigma: float = 16.0) -> tuple[float, float]:
        """Interval outside which the axis factor is numerically negligible."""
        c, s = self.center[axis], self.widths[axis]
        return c - n_sigma * s, c + n_sigma * s

    def spatial_radius(self, n_sigma: float = 16.0) -> float:
        """Radius covering the spatial (axes >= 1) support in the same sense."""
        c = np.linalg.norm(self.center[1:])
        return float(c + n_sigma * self.widths[1:].max())

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "dim": int(self.dim),
            "terms": [
                {"re": float(c.real), "im": float(c.imag), "alpha": [int(v) for v in a]}
                for c, a in zip(self.coeffs, self.alphas)
            ],
            "center": [float(v) for v in self.center],
            "widths": [float(v) for v in self.widths],
            "phase": [float(v) for v in self.phase],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "TestFn":
        dim = int(d["dim"])
        coeffs = np.array([t["re"] + 1j * t["im"] for t in d["terms"]], dtype=complex)
        alphas = np.array([t["alpha"] for t in d["terms"]], dtype=np.int64)
        if alphas.size and alphas.sum(axis=1).max() > MAX_INPUT_DEGREE:
            raise ValueError(f"input degree exceeds {MAX_INPUT_DEGREE}")
        return cls(dim, coeffs, alphas, d["center"], d["widths"], d["phase"])

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, s: str) -> "TestFn":
        return cls.from_json_dict(json.loads(s))

    # -- convenience constructors --------------------------------------------

    @classmethod
    def gaussian(cls, dim: int, center=None, widths=None, phase=None, coeff=1.0) -> "TestFn":
        """A single polynomial-free Gaussian packet."""
        center = np.zeros(dim) if center is None else center
        widths = np.ones(dim) if widths is None else widths
        phase = np.zeros(dim) if phase is None else phase
        return cls(dim, [coeff], np.zeros((1, dim), dtype=np.int64), center, widths, phase)


def _central_moment_table(widths: np.ndarray, n_max: int) -> np.ndarray:
    """moments[n, i] = integral u^n exp(-u^2 / sigma_i^2) du (odd n -> 0).

    These are the moments of |gaussian|^2, used by the exact L^2 norm.
    """
    d = len(widths)
    out = np.zeros((n_max + 1, d))
    for n in range(0, n_max + 1, 2):
        j = n // 2
        out[n] = math.gamma(j + 0.5) * widths ** (n + 1)
    return out


class TestFnBundle:
    """Several coefficient rows over one shared packet.

    Used as a vector-valued integrand: all members share (center, widths,
    phase) and a common monomial list, so a batch evaluation costs barely
    more than a single test function.  Build with :meth:`from_testfns`
    from packets produced by closed operations on one base function
    (derivatives, wave operator, ...), which preserve the shared
    parameters.
    """

    def __init__(self, dim, coeff_table, alphas, center, widths, phase):
        self.dim = int(dim)
        self.coeff_table = np.ascontiguousarray(coeff_table, dtype=complex)
        self.alphas = np.ascontiguousarray(alphas, dtype=np.int64)
        self.center = np.asarray(center, dtype=float)
        self.widths = np.asarray(widths, dtype=float)
        self.phase = np.asarray(phase, dtype=float)
        self.inv_two_sig2 = 0.5 / (self.widths * self.widths)

    @property
    def size(self) -> int:
        return self.coeff_table.shape[0]

    @classmethod
    def from_testfns(cls, fns: list[TestFn]) -> "TestFnBundle":
        ref = fns[0]
        for f in fns[1:]:
            if (
                f.dim != ref.dim
                or not np.array_equal(f.center, ref.center)
                or not np.array_equal(f.widths, ref.widths)
                or not np.array_equal(f.phase, ref.phase)
            ):
                raise ValueError("bundle members must share center/widths/phase")
        keys: dict[tuple[int, ...], int] = {}
        for f in fns:
            for a in f.alphas:
                keys.setdefault(tuple(int(v) for v in a), len(keys))
        alphas = np.array(sorted(keys, key=lambda t: keys[t]), dtype=np.int64)
        table = np.zeros((len(fns), len(keys)), dtype=complex)
        for r, f in enumerate(fns):
            for a, cf in zip(f.alphas, f.coeffs):
                table[r, keys[tuple(int(v) for v in a)]] = cf
        return cls(ref.dim, table, alphas.reshape(len(keys), ref.dim),
                   ref.center, ref.widths, ref.phase)

    def __call__(self, x) -> np.ndarray:
        """Evaluate on points (N, dim); returns (N, B)."""
        pts = np.ascontiguousarray(np.asarray(x, dtype=float).reshape(-1, self.dim))
        return _kernels.eval_packet_bundle(
            pts, self.coeff_table, self.alphas, self.center, self.inv_two_sig2, self.phase
        )

    def member(self, r: int) -> TestFn:
        return TestFn(self.dim, self.coeff_table[r], self.alphas,
                      self.center, self.widths, self.phase)


def random_testfn(rng: np.random.Generator, dim: int, *, max_degree: int = 2,
                  max_terms: int = 2) -> TestFn:
    """Draw a random packet from the canonical distribution.

    Widths are uniform in [0.5, 2], center and plane-wave components
    uniform in [-2, 2], total degree at most ``max_degree`` (default 2),
    coefficients uniform in angle with magnitude in [0.3, 1] -- inside the
    unit disk but bounded away from zero so that relative tolerances of
    the form tol * ||u|| stay well above the quadrature floor.
    """
    n_terms = int(rng.integers(1, max_terms + 1))
    alphas = np.zeros((n_terms, dim), dtype=np.int64)
    for t in range(n_terms):
        deg = int(rng.integers(0, max_degree + 1))
        for _ in range(deg):
            alphas[t, int(rng.integers(0, dim))] += 1
    mag = rng.uniform(0.3, 1.0, size=n_terms)
    ang = rng.uniform(0.0, 2.0 * math.pi, size=n_terms)
    coeffs = mag * np.exp(1j * ang)
    widths = rng.uniform(0.5, 2.0, size=dim)
    center = rng.uniform(-2.0, 2.0, size=dim)
    phase = rng.uniform(-2.0, 2.0, size=dim)
    return TestFn(dim, coeffs, alphas, center, widths, phase)
