"""Command-line surface: pairings, verification suites, tables, Fock demos.

All machine-readable output is JSON with a top-level ``"schema":
"minkprop/1"`` (CSV with a ``# schema minkprop/1`` comment header for
grids), serialized with sorted keys so a fixed seed yields byte-identical
bytes.  Exit codes: 0 success, 1 check failure, 2 invalid arguments,
3 numerical non-convergence.  The environment variable
``MINKPROP_THREADS`` caps how many verification reports run in parallel;
output assembly order is fixed regardless.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .densities_1d import verify_ft_table
from .dirac import clifford_report, dirac_identity_suite, pair_dirac_propagator
from .fock import (STATISTICS, LatticeSpec, ccr_suite,
                   commutator_vs_propagator)
from .fourier import (massless_transform_table, verify_F_perp_lemma,
                      verify_ehat_identities, verify_shell_cancellation)
from .mass_shell import MomShellDist, check_opp_decomposition, pair_shell_dist
from .propagators import (PROP_TAGS, PropKind, identity_suite,
                          kg_residual_report, massless_cross_route,
                          microcausality_check, pair_propagator,
                          smeared_value)
from .quadrature import QuadConfig
from .testfns import TestFn

__all__ = ["main", "build_parser"]

SCHEMA = "minkprop/1"
SUITES = ("fourier", "ft_table", "massshell", "propagators", "dirac",
          "fock", "all")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_ARGS = 2
EXIT_NO_CONVERGENCE = 3


def _max_threads() -> int:
    raw = os.environ.get("MINKPROP_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        n = os.cpu_count() or 1
    return n


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj: dict, out_path: str | None) -> None:
    _emit(json.dumps(obj, sort_keys=True, indent=2) + "\n", out_path)


def _parse_floats(text: str, name: str, n: int | None = None):
    try:
        vals = [float(v) for v in text.split(",") if v != ""]
    except ValueError as exc:
        raise ValueError(f"--{name}: expected comma-separated numbers, "
                         f"got {text!r}") from exc
    if not vals or (n is not None and len(vals) != n):
        want = f"{n} " if n is not None else ""
        raise ValueError(f"--{name}: expected {want}comma-separated "
                         f"numbers, got {text!r}")
    return vals


def _load_testfn(path: str) -> TestFn:
    try:
        with open(path, encoding="utf-8") as fh:
            return TestFn.from_json(fh.read())
    except OSError as exc:
        raise ValueError(f"cannot read test function file: {exc}") from exc
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise ValueError(f"malformed test function file {path!r}: "
                         f"{exc}") from exc


# ---------------------------------------------------------------------------
# pair


def cmd_pair(args) -> int:
    cfg = QuadConfig()
    u = _load_testfn(args.testfn)
    out = {"schema": SCHEMA, "command": "pair", "dist": args.dist,
           "mass": args.mass}
    if args.dist.startswith("slash:"):
        tag = args.dist[len("slash:"):]
        res = pair_dirac_propagator(PropKind(tag, args.mass), u, cfg)
        out["matrix_re"] = res.value.real.tolist()
        out["matrix_im"] = res.value.imag.tolist()
        out["abs_err"] = res.abs_err
        out["evaluations"] = res.evaluations
        out["converged"] = res.converged
    else:
        if args.dist in PROP_TAGS:
            res = pair_propagator(PropKind(args.dist, args.mass), u, cfg)
        else:
            dist = MomShellDist.from_name(args.dist, args.mass)
            res = pair_shell_dist(dist, u, cfg)
        out["re"] = res.value.real
        out["im"] = res.value.imag
        out["abs_err"] = res.abs_err
        out["evaluations"] = res.evaluations
        out["converged"] = res.converged
    _emit_json(out, args.out)
    return EXIT_OK if out["converged"] else EXIT_NO_CONVERGENCE


# ---------------------------------------------------------------------------
# verify


def _suite_reports(suite, masses, tol, seed, cfg):
    """(name, thunk) list for one suite, in fixed output order."""
    def t(v, default):
        return default if v is None else v

    m3 = tuple(t(masses, (0.0, 0.5, 1.0)))
    m2 = tuple(t(masses, (0.0, 1.0)))
    jobs = []
    if suite in ("ft_table", "all"):
        jobs.append(("ft_table", lambda: verify_ft_table(
            cfg, seed=seed, tol=t(tol, 1e-6))))
    if suite in ("fourier", "all"):
        jobs.append(("shell_cancellation", lambda: verify_shell_cancellation(
            m3, cfg, seed=seed, rel_tol=t(tol, 1e-6))))
        for m in m3:
            jobs.append((f"F_perp_lemma_m{m:g}",
                         lambda m=m: verify_F_perp_lemma(
                             m, cfg, seed=seed, tol=t(tol, 1e-6))))
        for m in m3:
            jobs.append((f"ehat_identities_m{m:g}",
                         lambda m=m: verify_ehat_identities(
                             m, cfg, seed=seed, tol=t(tol, 1e-5))))
        jobs.append(("massless_transform_table",
                     lambda: massless_transform_table(
                         cfg, seed=seed, tol=t(tol, 1e-6))))
    if suite in ("massshell", "all"):
        for m in m2:
            jobs.append((f"opp_decomposition_m{m:g}",
                         lambda m=m: check_opp_decomposition(
                             m, cfg, seed=seed, tol=t(tol, 1e-5))))
    if suite in ("propagators", "all"):
        jobs.append(("identity_suite", lambda: identity_suite(
            cfg, masses=m3, seed=seed, tol=t(tol, 1e-6))))
        jobs.append(("kg_residuals", lambda: kg_residual_report(
            cfg, masses=m3, seed=seed, rel_tol=t(tol, 1e-6))))
        jobs.append(("microcausality", lambda: microcausality_check(
            cfg, masses=m2)))
        jobs.append(("massless_cross_route", lambda: massless_cross_route(
            cfg, seed=seed, rel_tol=t(tol, 1e-7))))
    if suite in ("dirac", "all"):
        jobs.append(("clifford", lambda: clifford_report(seed=seed)))
        jobs.append(("dirac_identities", lambda: dirac_identity_suite(
            cfg, seed=seed, tol=t(tol, 1e-6), res_tol=t(tol, 1e-6))))
    if suite in ("fock", "all"):
        jobs.append(("fock_ccr", lambda: ccr_suite(0.5, 2, 1.0, STATISTICS)))
        spec = LatticeSpec(0.8, 8, 1.0, "boson")
        jobs.append(("fock_bridge", lambda: commutator_vs_propagator(
            (1.0, 0.0, 0.0, 0.0), (0.0, 0.0, 0.0, 0.0), spec, cfg)))
    return jobs


def cmd_verify(args) -> int:
    cfg = QuadConfig()
    masses = (tuple(_parse_floats(args.masses, "masses"))
              if args.masses else None)
    jobs = _suite_reports(args.suite, masses, args.tol, args.seed, cfg)
    workers = min(len(jobs), _max_threads())
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [(name, pool.submit(thunk)) for name, thunk in jobs]
            results = [(name, fut.result()) for name, fut in futures]
    else:
        results = [(name, thunk()) for name, thunk in jobs]
    reports = [{"report": name, **rep} for name, rep in results]
    ok = all(rep["pass"] for rep in reports)
    _emit_json({"schema": SCHEMA, "command": "verify", "suite": args.suite,
                "seed": args.seed, "reports": reports, "pass": ok},
               args.out)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# table


def _parse_grid(text: str):
    """``t=-3:3:25,r=0:3:13`` -> ordered {axis: linspace}."""
    axes = {}
    for part in text.split(","):
        if "=" not in part:
            raise ValueError(f"--grid: malformed axis spec {part!r}")
        name, _, rng = part.partition("=")
        name = name.strip()
        if name not in ("t", "r"):
            raise ValueError(f"--grid: unknown axis {name!r} (use t and r)")
        pieces = rng.split(":")
        if len(pieces) != 3:
            raise ValueError(f"--grid: axis {name!r} needs start:stop:count")
        try:
            start, stop, count = float(pieces[0]), float(pieces[1]), \
                int(pieces[2])
        except ValueError as exc:
            raise ValueError(f"--grid: bad numbers in {part!r}") from exc
        if count < 1:
            raise ValueError(f"--grid: axis {name!r} needs count >= 1")
        axes[name] = np.linspace(start, stop, count)
    if set(axes) != {"t", "r"}:
        raise ValueError("--grid must specify both t and r axes")
    return axes


def cmd_table(args) -> int:
    cfg = QuadConfig()
    if args.dist not in PROP_TAGS:
        raise ValueError(f"--dist for tables must be a propagator kind, "
                         f"one of {PROP_TAGS}")
    if args.sigma <= 0.0:
        raise ValueError("--sigma must be positive")
    kind = PropKind(args.dist, args.mass)
    axes = _parse_grid(args.grid)
    buf = io.StringIO()
    buf.write(f"# schema {SCHEMA}\n")
    buf.write(f"# table dist={args.dist} mass={args.mass!r} "
              f"sigma={args.sigma!r}\n")
    buf.write("t,r,re,im,abs_err\n")
    converged = True
    for tv in axes["t"]:
        for rv in axes["r"]:
            res = smeared_value(kind, (tv, rv, 0.0, 0.0), args.sigma, cfg)
            converged &= res.converged
            cells = (float(tv), float(rv), float(res.value.real),
                     float(res.value.imag), float(res.abs_err))
            buf.write(",".join(repr(c) for c in cells) + "\n")
    _emit(buf.getvalue(), args.out)
    return EXIT_OK if converged else EXIT_NO_CONVERGENCE


# ---------------------------------------------------------------------------
# fock


def cmd_fock(args) -> int:
    if args.fock_cmd == "ccr":
        stats = STATISTICS if args.stats == "both" else (args.stats,)
        rep = ccr_suite(args.dp, args.nhalf, args.mass, stats)
        _emit_json({"schema": SCHEMA, "command": "fock ccr", **rep},
                   args.out)
        return EXIT_OK if rep["pass"] else EXIT_CHECK_FAILED
    # bridge
    x = _parse_floats(args.x, "x", 4)
    y = _parse_floats(args.y, "y", 4)
    ladder = tuple(_parse_floats(args.ladder, "ladder"))
    if any(dp <= 0 for dp in ladder):
        raise ValueError("--ladder: spacings must be positive")
    stats = args.stats if args.stats != "both" else "boson"
    spec = LatticeSpec(ladder[0], 1, args.mass, stats)
    rep = commutator_vs_propagator(x, y, spec, QuadConfig(),
                                   ladder=ladder, sigma=args.sigma)
    _emit_json({"schema": SCHEMA, "command": "fock bridge", **rep},
               args.out)
    return EXIT_OK if rep["pass"] else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="minkprop",
        description="Minkowski-space density pairings, propagator "
                    "verification suites and Fock-lattice demonstrations.")
    sub = p.add_subparsers(dest="command", required=True)

    pair = sub.add_parser(
        "pair", help="pair one distribution against a test function")
    pair.add_argument("--dist", required=True,
                      help="shell density (omega+, eps-, e, opp-+, ... "
                           "with optional @pos), propagator kind (Dret, "
                           "DF, ...), or slash:KIND for the slashed family")
    pair.add_argument("--mass", type=float, required=True)
    pair.add_argument("--testfn", required=True,
                      help="JSON file holding the test function")
    pair.add_argument("--out", default=None)
    pair.set_defaults(func=cmd_pair)

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("--suite", required=True, choices=SUITES)
    ver.add_argument("--masses", default=None,
                     help="comma-separated mass overrides")
    ver.add_argument("--tol", type=float, default=None,
                     help="tolerance override for every report")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--out", default=None)
    ver.set_defaults(func=cmd_verify)

    tab = sub.add_parser(
        "table", help="CSV of narrow-Gaussian-smeared propagator values")
    tab.add_argument("--dist", required=True)
    tab.add_argument("--mass", type=float, required=True)
    tab.add_argument("--grid", required=True,
                     help="axis grid, e.g. t=-3:3:25,r=0:3:13")
    tab.add_argument("--sigma", type=float, required=True,
                     help="smearing width")
    tab.add_argument("--out", default=None)
    tab.set_defaults(func=cmd_table)

    fock = sub.add_parser("fock", help="Fock-lattice demonstrations")
    fsub = fock.add_subparsers(dest="fock_cmd", required=True)
    ccr = fsub.add_parser("ccr", help="canonical (anti)commutation suite")
    ccr.add_argument("--dp", type=float, default=0.5)
    ccr.add_argument("--nhalf", type=int, default=2)
    ccr.add_argument("--mass", type=float, default=1.0)
    ccr.add_argument("--stats", default="both",
                     choices=(*STATISTICS, "both"))
    ccr.add_argument("--out", default=None)
    ccr.set_defaults(func=cmd_fock)
    bridge = fsub.add_parser(
        "bridge", help="lattice commutator vs propagator refinement table")
    bridge.add_argument("--x", required=True, help="event, four numbers")
    bridge.add_argument("--y", required=True, help="event, four numbers")
    bridge.add_argument("--ladder", default="0.8,0.4,0.2",
                        help="comma-separated dp refinement ladder")
    bridge.add_argument("--mass", type=float, default=1.0)
    bridge.add_argument("--stats", default="boson",
                        choices=STATISTICS)
    bridge.add_argument("--sigma", type=float, default=0.4,
                        help="probe width for both sides")
    bridge.add_argument("--out", default=None)
    bridge.set_defaults(func=cmd_fock)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_BAD_ARGS
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"minkprop: error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS
    except ArithmeticError as exc:
        print(f"minkprop: non-convergence: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE


if __name__ == "__main__":
    raise SystemExit(main())
