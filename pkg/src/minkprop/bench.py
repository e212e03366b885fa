"""Micro-benchmarks of the hot kernels: ``python -m minkprop.bench``.

Times the packet evaluator, the bundled packet evaluator, and the smeared
lattice mode sum on representative workloads, for the pure-numpy
implementations and (when importable) the JIT path, checking that both
produce the same numbers.  ``--quick`` shrinks the workloads; the output
is a plain text table.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from . import _kernels


def _workloads(quick: bool):
    rng = np.random.default_rng(42)
    n_pts = 20_000 if quick else 200_000
    n_modes = 100_000 if quick else 1_000_000
    points = rng.normal(size=(n_pts, 4))
    coeffs = (rng.normal(size=6) + 1j * rng.normal(size=6)).astype(complex)
    alphas = rng.integers(0, 3, size=(6, 4)).astype(np.int64)
    center = rng.normal(size=4)
    inv2s2 = 1.0 / (2.0 * rng.uniform(0.5, 1.5, size=4) ** 2)
    phase = rng.normal(size=4)
    coeff_table = (rng.normal(size=(15, 6))
                   + 1j * rng.normal(size=(15, 6))).astype(complex)
    energies = np.sqrt(1.0 + rng.uniform(0.0, 40.0, size=n_modes))
    p1, p2, p3 = rng.normal(size=(3, n_modes)) * 2.0
    c = np.array([1.0, -0.3, 0.2, -0.1])
    return [
        ("eval_packet", f"{n_pts} points, 6 terms",
         (points, coeffs, alphas, center, inv2s2, phase)),
        ("eval_packet_bundle", f"{n_pts} points, 15x6 table",
         (points, coeff_table, alphas, center, inv2s2, phase)),
        ("lattice_commutator_sum", f"{n_modes} modes",
         (energies, p1, p2, p3, 0.008, c, 0.16)),
    ]


def _time(fn, args, repeats: int) -> tuple[float, object]:
    fn(*args)  # warm-up (JIT compilation, caches)
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="python -m minkprop.bench",
                                 description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true",
                    help="smaller workloads (for CI)")
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args(argv)

    print(f"active backend: {_kernels.BACKEND} "
          f"(numba available: {_kernels.HAS_NUMBA})")
    header = f"{'kernel':26s} {'workload':24s} {'numpy':>12s}"
    if _kernels.HAS_NUMBA:
        header += f" {'numba':>12s} {'speedup':>9s} {'max |diff|':>11s}"
    print(header)
    print("-" * len(header))
    for name, desc, work in _workloads(args.quick):
        np_fn = getattr(_kernels, f"{name}_numpy")
        t_np, r_np = _time(np_fn, work, args.repeats)
        line = f"{name:26s} {desc:24s} {t_np * 1e3:10.2f}ms"
        if _kernels.HAS_NUMBA:
            nb_fn = getattr(_kernels, f"{name}_numba")
            t_nb, r_nb = _time(nb_fn, work, args.repeats)
            diff = float(np.max(np.abs(np.asarray(r_np) - np.asarray(r_nb))))
            line += (f" {t_nb * 1e3:10.2f}ms {t_np / t_nb:8.2f}x"
                     f" {diff:11.2e}")
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
