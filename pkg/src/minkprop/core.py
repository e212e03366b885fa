"""Minkowski-space primitives shared by every other module.

The ambient space is R^4 with coordinates (x0, x1, x2, x3), metric
signature (+, -, -, -), and the *duality* pairing

    <p, x> = p0*x0 + p1*x1 + p2*x2 + p3*x3

used by all Fourier kernels.  The metric enters only through the
d'Alembert operator, mass shells and gamma-matrix contractions; the
Fourier analysis itself is Euclidean in the duality pairing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Metric",
    "MINKOWSKI",
    "FourVector",
    "Mass",
    "as_mass",
    "minkowski_square",
    "duality_pairing",
    "energy_on_shell",
    "spatial_radius",
]


@dataclass(frozen=True)
class Metric:
    """Diagonal flat metric with a fixed signature.

    Only the mostly-minus Minkowski metric diag(+1, -1, -1, -1) is used
    in this package, exposed as the module constant ``MINKOWSKI``.
    """

    diag: tuple[float, float, float, float] = (1.0, -1.0, -1.0, -1.0)

    @property
    def signature(self) -> tuple[int, int]:
        """Counts (n_plus, n_minus) of positive and negative directions."""
        plus = sum(1 for d in self.diag if d > 0)
        return plus, len(self.diag) - plus

    def g(self, p, q) -> float | np.ndarray:
        """Metric pairing g(p, q) = p0*q0 - p1*q1 - p2*q2 - p3*q3.

        Accepts arrays with the vector index on the last axis and
        broadcasts over leading axes.
        """
        p = np.asarray(p, dtype=float)
        q = np.asarray(q, dtype=float)
        d = np.asarray(self.diag)
        return np.sum(d * p * q, axis=-1)

    def square(self, p) -> float | np.ndarray:
        """Metric square g(p, p)."""
        return self.g(p, p)


MINKOWSKI = Metric()


@dataclass(frozen=True)
class FourVector:
    """A point of R^4 (position or momentum), components (x0, x1, x2, x3)."""

    x0: float
    x1: float
    x2: float
    x3: float

    @classmethod
    def from_array(cls, a) -> "FourVector":
        a = np.asarray(a, dtype=float).reshape(4)
        return cls(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    def as_array(self) -> np.ndarray:
        return np.array([self.x0, self.x1, self.x2, self.x3], dtype=float)

    @property
    def time(self) -> float:
        return self.x0

    @property
    def spatial(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3], dtype=float)

    def minkowski_square(self) -> float:
        return float(MINKOWSKI.square(self.as_array()))

    def __add__(self, other: "FourVector") -> "FourVector":
        return FourVector.from_array(self.as_array() + other.as_array())

    def __sub__(self, other: "FourVector") -> "FourVector":
        return FourVector.from_array(self.as_array() - other.as_array())

    def __neg__(self) -> "FourVector":
        return FourVector(-self.x0, -self.x1, -self.x2, -self.x3)


@dataclass(frozen=True)
class Mass:
    """A non-negative mass parameter.

    Used at API boundaries that validate user input; the numerical
    routines accept plain floats as well (coerced by :func:`as_mass`).
    """

    value: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.value) or self.value < 0.0:
            raise ValueError(f"mass must be finite and >= 0, got {self.value!r}")

    def __float__(self) -> float:
        return float(self.value)


def as_mass(m) -> float:
    """Coerce a float or :class:`Mass` to a validated non-negative float."""
    m = float(m)
    if not np.isfinite(m) or m < 0.0:
        raise ValueError(f"mass must be finite and >= 0, got {m!r}")
    return m


def minkowski_square(p) -> float | np.ndarray:
    """g(p, p) = p0**2 - |p_perp|**2 for the mostly-minus metric."""
    return MINKOWSKI.square(p)


def duality_pairing(p, x) -> float | np.ndarray:
    """Euclidean duality pairing <p, x> = sum_i p_i x_i (all plus signs).

    This is the pairing in every Fourier kernel e^{-+ i <y, x>}; it is
    *not* the metric pairing.
    """
    p = np.asarray(p, dtype=float)
    x = np.asarray(x, dtype=float)
    return np.sum(p * x, axis=-1)


def energy_on_shell(m, p_perp) -> float | np.ndarray:
    """Shell energy E_m(p_perp) = sqrt(m^2 + |p_perp|^2).

    Parameters
    ----------
    m : float or Mass
        Mass parameter, m >= 0.
    p_perp : array_like, shape (..., 3) or (3,)
        Spatial momentum; broadcasting over leading axes.
    """
    m = as_mass(m)
    p_perp = np.asarray(p_perp, dtype=float)
    rho2 = np.sum(p_perp * p_perp, axis=-1)
    return np.sqrt(m * m + rho2)


def spatial_radius(x) -> float | np.ndarray:
    """r = |x_perp|, the Euclidean length of the spatial part of a 4-vector."""
    x = np.asarray(x, dtype=float)
    return np.sqrt(np.sum(x[..., 1:] * x[..., 1:], axis=-1))
