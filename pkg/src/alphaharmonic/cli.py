"""Command-line interface.

Exit codes: 0 when every check passes, 1 when any check fails, 2 for usage or
configuration errors, 3 when a computation does not converge.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import replace
from pathlib import Path

from .boundary import parse_boundary
from .constants import KINDS, constant
from .core import DiskPoint, extension_and_partials
from .errors import AlphaHarmonicError, BoundarySpecError, ConfigError, ConvergenceError, DomainError
from .harness import (
    load_config,
    nonconvergent,
    records_to_csv,
    run_sweep,
    sharpness_study,
    sharpness_to_csv,
    write_json,
)
from .quadrature import QuadratureSpec

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NONCONVERGENCE = 0, 1, 2, 3

THEOREM_CHOICES = ("1.6", "1.7", "1.8", "1.9", "1.10")


def _float_list(text: str) -> list[float]:
    try:
        return [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _point(text: str) -> DiskPoint:
    try:
        r, theta = (float(s) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected R,THETA, got {text!r}") from None
    return DiskPoint(r, theta)


def cmd_eval(args) -> int:
    f = parse_boundary(args.boundary)
    quad = QuadratureSpec(tol=args.tol)
    u, parts = extension_and_partials(args.alpha, f, args.point, quad, full=True)
    for name, value in (("u", u), *zip(parts._fields, parts)):
        print(f"{name:8s} {complex(value).real!r} {complex(value).imag!r}")
    return EXIT_OK


def cmd_constants(args) -> int:
    p = args.p
    if args.kind in "ABC" and p is None:
        raise DomainError(f"constant {args.kind} needs --p")
    radii = args.r if args.r is not None else [None]
    for r in radii:
        cv = constant(args.kind, args.alpha, p, r)
        what = "sup" if cv.is_supremum else f"r={r!r}"
        line = f"{cv.kind} alpha={cv.alpha!r} p={cv.p!r} {what} value={cv.value!r}"
        if cv.is_supremum and "dominates" in cv.diagnostics:
            line += f" grid_sup={cv.diagnostics['grid_sup']!r} dominates={cv.diagnostics['dominates']}"
        print(line)
    return EXIT_OK


def cmd_verify(args) -> int:
    config = load_config(args.config)
    if args.theorem:
        config = replace(config, theorems=tuple(args.theorem))
    records = run_sweep(config)
    Path(args.out).write_text(records_to_csv(records), encoding="utf-8")
    if args.json:
        write_json(records, Path(args.out).with_suffix(".json"))
    failed = [rec for rec in records if not rec.passed]
    print(f"{len(records)} records, {len(failed)} failed -> {args.out}")
    for rec in failed:
        print(f"FAIL {rec.theorem} alpha={rec.alpha!r} p={rec.p!r} r={rec.r!r} {rec.boundary} margin={rec.margin!r} {rec.notes}")
    if nonconvergent(records):
        return EXIT_NONCONVERGENCE
    return EXIT_FAIL if failed else EXIT_OK


def cmd_sharpness(args) -> int:
    rows = sharpness_study(args.kind, args.alpha, args.p, args.rho)
    text = sharpness_to_csv(args.kind, args.alpha, args.p, rows)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alphaharmonic",
        description="Poisson-type extensions of alpha-harmonic functions and their sharp bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="print u and its first partials at one point")
    ev.add_argument("--alpha", type=float, required=True)
    ev.add_argument("--boundary", required=True, help="boundary spec, e.g. trigpoly:1,3")
    ev.add_argument("--point", type=_point, required=True, help="R,THETA")
    ev.add_argument("--tol", type=float, default=1e-10)
    ev.set_defaults(func=cmd_eval)

    co = sub.add_parser("constants", help="print a sharp constant or its supremum")
    co.add_argument("--kind", choices=KINDS, required=True)
    co.add_argument("--alpha", type=float, required=True)
    co.add_argument("--p", type=float)
    co.add_argument("--r", type=_float_list, help="comma-separated radii; omit for the supremum")
    co.set_defaults(func=cmd_constants)

    ve = sub.add_parser("verify", help="run a sweep from a config file")
    ve.add_argument("--theorem", action="append", choices=THEOREM_CHOICES, help="restrict to a theorem (repeatable)")
    ve.add_argument("--config", required=True)
    ve.add_argument("--out", required=True)
    ve.add_argument("--json", action="store_true", help="also write records with elapsed times and notes")
    ve.set_defaults(func=cmd_verify)

    sh = sub.add_parser("sharpness", help="normalised ratios along an extremal family")
    sh.add_argument("--kind", choices=KINDS, required=True)
    sh.add_argument("--alpha", type=float, required=True)
    sh.add_argument("--p", type=float, default=math.inf)
    sh.add_argument("--rho", type=_float_list, default=[0.9, 0.99, 0.999])
    sh.add_argument("--out")
    sh.set_defaults(func=cmd_sharpness)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (ConfigError, BoundarySpecError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AlphaHarmonicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
