"""Hot numerical kernels with a numba fast path and a pure-numpy fallback.

Everything the adaptive quadratures spend their time on funnels through
two kernels:

* evaluation of a Gaussian-Hermite test-function "packet"
  (polynomial x anisotropic Gaussian x plane-wave phase) on a batch of
  points, and
* the smeared lattice mode sums used by the Fock-space bridge.

The backend is chosen once at import time from the environment variable
``MINKPROP_BACKEND``:

* ``numba`` -- JIT-compiled kernels (default when numba imports cleanly),
* ``numpy`` -- vectorized pure-numpy implementations of the same math.

Both paths produce identical results to float rounding; the benchmark
``python -m minkprop.bench`` compares their throughput.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "BACKEND",
    "HAS_NUMBA",
    "eval_packet",
    "eval_packet_bundle",
    "lattice_commutator_sum",
    "eval_packet_numpy",
    "eval_packet_bundle_numpy",
    "lattice_commutator_sum_numpy",
]


# ---------------------------------------------------------------------------
# pure-numpy implementations (always available; the reference semantics)
# ---------------------------------------------------------------------------

def eval_packet_numpy(points, coeffs, alphas, center, inv_two_sig2, phase):
    """Evaluate sum_t c_t * prod_i (x_i - c_i)^a_ti * gauss * e^{i k.x}.

    Parameters
    ----------
    points : (N, d) float64
    coeffs : (T,) complex128
    alphas : (T, d) int64
    center, inv_two_sig2, phase : (d,) float64
        Gaussian center, 1/(2 sigma_i^2) per axis, plane-wave vector k.

    Returns
    -------
    (N,) complex128
    """
    diff = points - center[None, :]                       # (N, d)
    mono = np.prod(diff[:, None, :] ** alphas[None, :, :], axis=2)  # (N, T)
    gauss = np.exp(-np.sum(diff * diff * inv_two_sig2[None, :], axis=1))
    ph = np.exp(1j * (points @ phase))
    return (mono @ coeffs) * gauss * ph


def eval_packet_bundle_numpy(points, coeff_table, alphas, center, inv_two_sig2, phase):
    """Same as :func:`eval_packet_numpy` for B coefficient rows at once.

    ``coeff_table`` has shape (B, T); returns (N, B).  All bundle members
    share the monomial set and Gaussian/phase parameters, so the heavy
    per-point factors are computed once.
    """
    diff = points - center[None, :]
    mono = np.prod(diff[:, None, :] ** alphas[None, :, :], axis=2)  # (N, T)
    gauss = np.exp(-np.sum(diff * diff * inv_two_sig2[None, :], axis=1))
    ph = np.exp(1j * (points @ phase))
    return (mono @ coeff_table.T) * (gauss * ph)[:, None]


def lattice_commutator_sum_numpy(energies, p1, p2, p3, dp3, c, sigma2):
    """Smeared lattice commutator sum for the scalar field.

    Computes ``sum_p dp^3 / (2 E_p) * (G(-p) - G(p))`` where
    ``G(p) = exp(i <p, c> - sigma2 |p|^2 / 2)`` is the Fourier transform
    of a normalized Gaussian centered at ``c`` (duality pairing, Euclidean
    damping), and the mode list carries ``p = (E, p1, p2, p3)``.

    Returns a complex scalar; the overall ``(2 pi)^-3`` is applied by the
    caller.
    """
    phases = energies * c[0] + p1 * c[1] + p2 * c[2] + p3 * c[3]
    damp = np.exp(-0.5 * sigma2 * (energies * energies + p1 * p1 + p2 * p2 + p3 * p3))
    return complex(-2j * dp3 * np.sum(np.sin(phases) * damp / (2.0 * energies)))


# ---------------------------------------------------------------------------
# numba fast path
# ---------------------------------------------------------------------------

HAS_NUMBA = False
_requested = os.environ.get("MINKPROP_BACKEND", "").strip().lower()

if _requested != "numpy":
    try:
        from numba import njit

        HAS_NUMBA = True
    except ImportError:
        HAS_NUMBA = False
        if _requested == "numba":
            raise RuntimeError(
                "MINKPROP_BACKEND=numba requested but numba is not importable"
            )

if HAS_NUMBA:

    @njit(cache=True)
    def _eval_packet_nb(points, coeffs, alphas, center, inv_two_sig2, phase):
        n, d = points.shape
        t = coeffs.shape[0]
        out = np.empty(n, dtype=np.complex128)
        for i in range(n):
            expo = 0.0
            ang = 0.0
            for j in range(d):
                u = points[i, j] - center[j]
                expo += u * u * inv_two_sig2[j]
                ang += points[i, j] * phase[j]
            acc = 0.0 + 0.0j
            for k in range(t):
                mono = 1.0
                for j in range(d):
                    a = alphas[k, j]
                    u = points[i, j] - center[j]
                    for _ in range(a):
                        mono *= u
                acc += coeffs[k] * mono
            out[i] = acc * np.exp(-expo) * (np.cos(ang) + 1j * np.sin(ang))
        return out

    @njit(cache=True)
    def _eval_packet_bundle_nb(points, coeff_table, alphas, center, inv_two_sig2, phase):
        n, d = points.shape
        b, t = coeff_table.shape
        out = np.empty((n, b), dtype=np.complex128)
        mono = np.empty(t, dtype=np.float64)
        for i in range(n):
            expo = 0.0
            ang = 0.0
            for j in range(d):
                u = points[i, j] - center[j]
                expo += u * u * inv_two_sig2[j]
                ang += points[i, j] * phase[j]
            for k in range(t):
                m = 1.0
                for j in range(d):
                    a = alphas[k, j]
                    u = points[i, j] - center[j]
                    for _ in range(a):
                        m *= u
                mono[k] = m
            env = np.exp(-expo) * (np.cos(ang) + 1j * np.sin(ang))
            for r in range(b):
                acc = 0.0 + 0.0j
                for k in range(t):
                    acc += coeff_table[r, k] * mono[k]
                out[i, r] = acc * env
        return out

    @njit(cache=True)
    def _lattice_commutator_sum_nb(energies, p1, p2, p3, dp3, c, sigma2):
        acc = 0.0
        m = energies.shape[0]
        for i in range(m):
            e = energies[i]
            ph = e * c[0] + p1[i] * c[1] + p2[i] * c[2] + p3[i] * c[3]
            damp = np.exp(-0.5 * sigma2 * (e * e + p1[i] * p1[i] + p2[i] * p2[i] + p3[i] * p3[i]))
            acc += np.sin(ph) * damp / (2.0 * e)
        return -2j * dp3 * acc

    def eval_packet_numba(points, coeffs, alphas, center, inv_two_sig2, phase):
        return _eval_packet_nb(points, coeffs, alphas, center, inv_two_sig2, phase)

    def eval_packet_bundle_numba(points, coeff_table, alphas, center, inv_two_sig2, phase):
        return _eval_packet_bundle_nb(points, coeff_table, alphas, center, inv_two_sig2, phase)

    def lattice_commutator_sum_numba(energies, p1, p2, p3, dp3, c, sigma2):
        return complex(_lattice_commutator_sum_nb(energies, p1, p2, p3, dp3, c, sigma2))


if HAS_NUMBA and _requested != "numpy":
    BACKEND = "numba"
    eval_packet = eval_packet_numba
    eval_packet_bundle = eval_packet_bundle_numba
    lattice_commutator_sum = lattice_commutator_sum_numba
else:
    BACKEND = "numpy"
    eval_packet = eval_packet_numpy
    eval_packet_bundle = eval_packet_bundle_numpy
    lattice_commutator_sum = lattice_commutator_sum_numpy
