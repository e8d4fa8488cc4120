"""Command-line interface.

Every verifier and exporter is exposed as a subcommand producing either
human-readable lines or, with --json, a single self-contained JSON report on
standard output (diagnostics go to standard error).  Exit codes separate the
mathematical outcome from operational problems:

    0   positive verdict (eigen / minimal / export succeeded)
    1   negative verdict (not eigen / not minimal)
    2   inconclusive or partial (undecided ladder, partial sample yield)
    3+  operational error (bad input, precondition failure, empty fiber)

The sphere dimension is always explicit: passing --vars N and --sphere-dim n
with N != n+1 is rejected rather than silently fixed, because every formula
downstream depends on that relation.
"""

from __future__ import annotations

import argparse
import enum
import json
import sys
import time
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .eigen import verify_eigenfunction
from .errors import (
    EigenSphereError,
    EmptyFiber,
    InsufficientYield,
    NotAnEigenfunction,
    ParseError,
    SingularFiber,
)
from .geometry import VarietySpec, add_stereo, export_cloud, sample
from .minimality import (
    DEFAULT_REJECT,
    DEFAULT_SAMPLES,
    DEFAULT_TOL,
    check_minimal_codim1,
    check_minimal_codim2,
    classify_lawson,
)
from .parsing import parse
from .search import search_eigen
from .selftest import run_selftest

EXIT_POSITIVE = 0
EXIT_NEGATIVE = 1
EXIT_INCONCLUSIVE = 2
EXIT_ERROR = 3


def _jsonable(value):
    """Coerce numpy scalars/arrays, Fractions, and enums for json.dumps."""
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else str(value)
    if isinstance(value, enum.Enum):
        return value.value
    return value


def _emit(args, inputs: Dict, verdict: Dict, started: float, human_lines: List[str]) -> None:
    if getattr(args, "json", False):
        report = {
            "command": args.command,
            "inputs": _jsonable(inputs),
            "verdict": _jsonable(verdict),
            "timing_seconds": round(time.perf_counter() - started, 6),
            "version": __version__,
            "rng_seed": inputs.get("seed"),
        }
        print(json.dumps(report, indent=2))
    else:
        for line in human_lines:
            print(line)


def _parse_poly(expr: str, nvars: int):
    return parse(expr, nvars)


def _parse_line(text: str) -> Tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"--line expects 'a,b', got {text!r}")
    return Fraction(parts[0].strip()), Fraction(parts[1].strip())


def _check_dims(nvars: int, sphere_dim: int) -> None:
    if nvars != sphere_dim + 1:
        raise ValueError(
            f"--vars {nvars} and --sphere-dim {sphere_dim} disagree: need vars = sphere-dim + 1"
        )


# ---------------------------------------------------------------------------
# subcommand implementations


def _cmd_eigen_check(args) -> int:
    started = time.perf_counter()
    _check_dims(args.vars, args.sphere_dim)
    P = _parse_poly(args.poly, args.vars)
    report = verify_eigenfunction(P, args.sphere_dim)
    inputs = {"vars": args.vars, "sphere_dim": args.sphere_dim, "poly": args.poly}
    if report.is_eigen:
        lines = [
            f"eigenfunction: yes (degree k={report.k})",
            f"lambda = {report.lam}   mu = {report.mu}",
        ]
    else:
        lines = [
            "eigenfunction: no",
            f"failed condition: {report.failure.condition}",
            f"residual: {report.failure.residual}",
        ]
    _emit(args, inputs, report.to_json(), started, lines)
    return EXIT_POSITIVE if report.is_eigen else EXIT_NEGATIVE


def _cmd_minimal_line(args) -> int:
    started = time.perf_counter()
    _check_dims(args.vars, args.sphere_dim)
    F = _parse_poly(args.poly, args.vars)
    a, b = _parse_line(args.line)
    verdict = check_minimal_codim1(
        F, a, b, args.sphere_dim,
        samples=args.samples, tol=args.tol, reject=args.reject,
        rng_seed=args.seed, cross_check=args.cross_check,
    )
    inputs = {
        "vars": args.vars, "sphere_dim": args.sphere_dim, "poly": args.poly,
        "line": args.line, "samples": args.samples, "tol": args.tol,
        "reject": args.reject, "seed": args.seed, "cross_check": args.cross_check,
    }
    lines = [f"status: {verdict.status}"]
    if verdict.certificate is not None:
        lines.append(f"certificate: {verdict.certificate}")
    if verdict.max_residual is not None:
        lines.append(f"max |criterion| over {verdict.samples} samples: {verdict.max_residual:.3e}")
    if verdict.reason:
        lines.append(f"reason: {verdict.reason}")
    _emit(args, inputs, verdict.to_json(), started, lines)
    if verdict.is_minimal():
        return EXIT_POSITIVE
    return EXIT_NEGATIVE if verdict.status == "NotMinimal" else EXIT_INCONCLUSIVE


def _cmd_minimal_zero(args) -> int:
    started = time.perf_counter()
    _check_dims(args.vars, args.sphere_dim)
    F = _parse_poly(args.poly, args.vars)
    verdict = check_minimal_codim2(
        F, args.sphere_dim,
        samples=args.samples, tol=args.tol, reject=args.reject, rng_seed=args.seed,
    )
    inputs = {
        "vars": args.vars, "sphere_dim": args.sphere_dim, "poly": args.poly,
        "samples": args.samples, "tol": args.tol, "reject": args.reject,
        "seed": args.seed,
    }
    lines = [f"status: {verdict.status}"]
    if verdict.max_residual is not None:
        lines.append(
            f"max sphere-intrinsic component over {verdict.samples} samples: "
            f"{verdict.max_residual:.3e}"
        )
    flat = verdict.diagnostics.get("flat_section_max_residual")
    if flat is not None:
        lines.append(f"flat-section max residual: {flat:.3e}")
    if verdict.reason:
        lines.append(f"reason: {verdict.reason}")
    _emit(args, inputs, verdict.to_json(), started, lines)
    if verdict.is_minimal():
        return EXIT_POSITIVE
    return EXIT_NEGATIVE if verdict.status == "NotMinimal" else EXIT_INCONCLUSIVE


def _cmd_sample(args) -> int:
    started = time.perf_counter()
    if args.count < 1:
        raise ValueError(f"--count must be >= 1, got {args.count}")
    constraints = []
    for expr in args.constraint or []:
        poly = _parse_poly(expr, args.vars)
        if not poly.is_real():
            raise ValueError(
                f"constraint {expr!r} has complex coefficients; pass its real and "
                f"imaginary parts separately"
            )
        constraints.append(poly)
    spec = VarietySpec(args.vars, constraints, include_sphere=True)
    partial = False
    try:
        cloud = sample(spec, args.count, args.seed, tol=args.tol)
    except InsufficientYield as err:
        cloud = err.cloud
        partial = True
        print(f"warning: {err}", file=sys.stderr)
    if args.stereo is not None:
        cloud = add_stereo(cloud, args.stereo)
    export_cloud(cloud, args.out)
    inputs = {
        "vars": args.vars, "constraints": args.constraint or [], "count": args.count,
        "seed": args.seed, "tol": args.tol, "out": args.out, "stereo": args.stereo,
    }
    verdict = {
        "points_written": len(cloud),
        "requested": args.count,
        "outcomes": cloud.metadata.get("outcomes", {}),
        "out": args.out,
        "partial": partial,
    }
    lines = [f"wrote {len(cloud)} of {args.count} requested points to {args.out}"]
    _emit(args, inputs, verdict, started, lines)
    return EXIT_INCONCLUSIVE if partial else EXIT_POSITIVE


def _cmd_lawson(args) -> int:
    started = time.perf_counter()
    surface_type = classify_lawson(args.n, args.m)
    inputs = {"n": args.n, "m": args.m}
    _emit(args, inputs, {"type": surface_type.value}, started, [surface_type.value])
    return EXIT_POSITIVE


def _cmd_search(args) -> int:
    started = time.perf_counter()
    results = search_eigen(
        args.vars, args.degree, args.attempts,
        rng_seed=args.seed, denominator_bound=args.denominator_bound,
    )
    inputs = {
        "vars": args.vars, "degree": args.degree, "attempts": args.attempts,
        "seed": args.seed, "denominator_bound": args.denominator_bound,
    }
    verdict = {"results": [r.to_json() for r in results]}
    lines = []
    for r in results[: min(5, len(results))]:
        exact = f"   exact: {r.to_json()['exact']}" if r.exact is not None else ""
        lines.append(f"attempt {r.attempt}: residual {r.residual:.3e}{exact}")
    if not lines:
        lines = ["no candidates"]
    _emit(args, inputs, verdict, started, lines)
    return EXIT_POSITIVE


def _cmd_selftest(args) -> int:
    started = time.perf_counter()
    results = run_selftest()
    all_ok = all(r.passed for r in results)
    lines = [
        f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.detail}" for r in results
    ]
    verdict = {
        "passed": all_ok,
        "suites": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
    }
    _emit(args, {}, verdict, started, lines)
    return EXIT_POSITIVE if all_ok else EXIT_ERROR


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eigensphere",
        description="Exact eigenfunction verification and minimal-submanifold checks on spheres",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, sphere=True):
        p.add_argument("--vars", type=int, required=True, help="number of ambient variables N")
        if sphere:
            p.add_argument("--sphere-dim", type=int, required=True,
                           help="sphere dimension n (must satisfy N = n+1)")
        p.add_argument("--json", action="store_true", help="emit a JSON report on stdout")

    p = sub.add_parser("eigen-check", help="verify the exact eigenfunction conditions")
    add_common(p)
    p.add_argument("--poly", required=True, help="polynomial expression")
    p.set_defaults(func=_cmd_eigen_check)

    p = sub.add_parser("minimal-line", help="minimality of a line preimage (codimension 1)")
    add_common(p)
    p.add_argument("--poly", required=True)
    p.add_argument("--line", required=True, help="line direction a,b (rationals)")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--reject", type=float, default=DEFAULT_REJECT)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cross-check", action="store_true",
                   help="run the numeric ladder even when an exact certificate exists")
    p.set_defaults(func=_cmd_minimal_line)

    p = sub.add_parser("minimal-zero", help="minimality of the zero fiber (codimension 2)")
    add_common(p)
    p.add_argument("--poly", required=True)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--reject", type=float, default=DEFAULT_REJECT)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_minimal_zero)

    p = sub.add_parser("sample", help="sample a constraint variety on the sphere, export CSV")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--constraint", action="append",
                   help="real polynomial constraint (repeatable); sphere always included")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--stereo", type=int, default=None,
                   help="add stereographic coordinates from this pole index (1-based)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("lawson", help="topological type of the surface Im(z1^n conj(z2)^m)=0")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_lawson)

    p = sub.add_parser("search", help="numeric search for eigenfunction candidates")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--attempts", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--denominator-bound", type=int, default=64)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("selftest", help="run the exact identity suite")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_selftest)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        # argparse exits 2 on usage errors; fold into the operational-error band
        code = err.code if isinstance(err.code, int) else 0
        return EXIT_ERROR if code != 0 else 0
    try:
        return args.func(args)
    except InsufficientYield as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (NotAnEigenfunction, EmptyFiber, SingularFiber) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR
    except ParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR
    except EigenSphereError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR


def entrypoint() -> None:
    sys.exit(main())
