"""Command-line front end: ``specht-young <command> ...``.

Exit codes: 0 every checked inequality holds (or no counterexample was
found), 1 a violation or a surviving counterexample candidate, 2 bad input
or unmet hypotheses.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .conjecture import SearchConfig, run_certification
from .errors import SpechtYoungError
from .matrixdoc import format_float, read_matrix
from .operator import verify_add_chain, verify_classic_chain, verify_mult_chain
from .scalar import LemmaId, WeightedPair, evaluate_scalar_chain, scalar_bounds, scan_lemma, specht_ratio
from .spd import SpdMatrix, SpectralBounds

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2
LEMMA_TOL = 1e-12


def dumps_machine(obj) -> str:
    """JSON with floats at 17 significant digits and sorted keys."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = (f"{json.dumps(str(k))}: {dumps_machine(v)}" for k, v in sorted(obj.items()))
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps_machine(v) for v in obj) + "]"
    return dumps_machine(float(obj))


def _emit(args, human: str, machine: dict):
    if args.format == "machine":
        print(dumps_machine(machine))
    else:
        print(human)


def cmd_specht(args) -> int:
    s = specht_ratio(args.h)
    _emit(args, format(s, ".15g"), {"h": args.h, "specht_ratio": s})
    return EXIT_OK


def cmd_bounds(args) -> int:
    pair = WeightedPair(args.a, args.b, args.nu)
    values = {k: float(v) for k, v in scalar_bounds(pair.a, pair.b, pair.nu).items()}
    chain = evaluate_scalar_chain(pair, args.tol)
    lines = [f"a = {pair.a:.15g}   b = {pair.b:.15g}   nu = {pair.nu:.15g}   r = {pair.r:.15g}", ""]
    lines += [f"{name:<18}{v:.15g}" for name, v in values.items()]
    lines += ["", f"{'comparison':<24}{'gap':>24}  holds"]
    lines += [f"{c.label:<24}{c.gap:>24.15g}  {'yes' if c.holds else 'NO'}" for c in chain]
    machine = {
        "input": {"a": pair.a, "b": pair.b, "nu": pair.nu, "tol": args.tol},
        "bounds": values,
        "comparisons": [
            {"label": c.label, "kind": c.kind.value, "lhs": c.lhs, "rhs": c.rhs, "gap": c.gap, "holds": c.holds}
            for c in chain
        ],
    }
    _emit(args, "\n".join(lines), machine)
    return EXIT_OK if all(c.holds for c in chain) else EXIT_VIOLATION


def _parse_bounds(text: str) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bounds must be four numbers m',m,M,M', got {text!r}") from None
    if len(vals) != 4:
        raise argparse.ArgumentTypeError("bounds must be four numbers m',m,M,M'")
    return vals


def cmd_verify_op(args) -> int:
    a = SpdMatrix(read_matrix(args.matrix_a))
    b = SpdMatrix(read_matrix(args.matrix_b))
    if not 0.0 <= args.nu <= 1.0:
        raise SpechtYoungError(f"nu must lie in [0, 1], got {args.nu}")
    if args.mode == "mult":
        bounds = None
        if args.bounds is not None:
            cond = 1 if a.lambda_max < b.lambda_min else 2
            bounds = SpectralBounds(*args.bounds, condition=cond)
        report = verify_mult_chain(a, b, args.nu, args.tol, bounds)
    elif args.mode == "add":
        report = verify_add_chain(a, b, args.nu, args.tol)
    else:
        report = verify_classic_chain(a, b, args.nu, args.tol)

    lines = [f"chain {report.chain_kind.value}   nu = {args.nu:.15g}   tol = {args.tol:.3g}"]
    machine = {
        "chain": report.chain_kind.value,
        "nu": args.nu,
        "tol": args.tol,
        "specht_factor": report.specht_factor,
        "links": [{"name": l.name, "min_eig_gap": l.min_eig_gap, "holds": l.holds} for l in report.links],
        "passed": report.passed,
    }
    if report.bounds is not None:
        bd = report.bounds
        lines.append(
            f"condition ({'i' if bd.condition == 1 else 'ii'})   m' = {bd.m_prime:.15g}   m = {bd.m:.15g}"
            f"   M = {bd.big_m:.15g}   M' = {bd.big_m_prime:.15g}   h = {bd.h:.15g}   h' = {bd.h_prime:.15g}"
        )
        lines.append(f"specht factor S(h^r) = {report.specht_factor:.15g}")
        machine["bounds"] = {
            "condition": bd.condition, "m_prime": bd.m_prime, "m": bd.m, "big_m": bd.big_m,
            "big_m_prime": bd.big_m_prime, "h": bd.h, "h_prime": bd.h_prime,
        }
    lines.append("")
    lines += [f"{l.name:<28}{l.min_eig_gap:>24.15g}  {'yes' if l.holds else 'NO'}" for l in report.links]
    _emit(args, "\n".join(lines), machine)
    return EXIT_OK if report.passed else EXIT_VIOLATION


def _parse_box(text: str):
    parts = text.split(",")
    try:
        lo, hi = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"box must be 'lo,hi', got {text!r}") from None
    return lo, hi


def cmd_search(args) -> int:
    lo, hi = args.box
    config = SearchConfig(n=args.n, box_lo=lo, box_hi=hi, samples=args.samples,
                          restarts=args.restarts, descent_iters=args.descent_iters, seed=args.seed)
    cert = run_certification(config, workers=args.workers)
    _emit(args, cert.text(), cert.to_dict())
    if cert.candidate:
        print("candidate counterexample survived the compensated recheck", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_scan_lemmas(args) -> int:
    if args.grid < 2:
        raise SpechtYoungError("--grid must be at least 2")
    if not (math.isfinite(args.max) and args.max > 1.0):
        raise SpechtYoungError("--max must be a finite number above 1")
    domains = {
        LemmaId.LOG_BOUNDS: (1.0, args.max),
        LemmaId.THREE_MEANS: (1.0 / args.max, args.max),
        LemmaId.EXP_T_LEMMA: (0.0, args.max),
    }
    reports = [scan_lemma(lid, lo, hi, args.grid) for lid, (lo, hi) in domains.items()]
    ok = all(rep.passed(LEMMA_TOL) for rep in reports)
    lines = [f"{'lemma':<12}{'domain':<28}{'points':>9}{'min_margin':>24}{'argmin':>24}  pass"]
    for rep in reports:
        dom = f"[{rep.domain_lo:.10g}, {rep.domain_hi:.10g}]"
        arg = f"{rep.argmin:.6g}" if rep.argmin_y is None else f"({rep.argmin:.4g}, {rep.argmin_y:.4g})"
        lines.append(f"{rep.lemma_id.value:<12}{dom:<28}{rep.grid_points:>9}{rep.min_margin:>24.15g}{arg:>24}"
                     f"  {'yes' if rep.passed(LEMMA_TOL) else 'NO'}")
    machine = {
        "reports": [
            {"lemma": r.lemma_id.value, "domain_lo": r.domain_lo, "domain_hi": r.domain_hi,
             "grid_points": r.grid_points, "min_margin": r.min_margin, "min_scaled_margin": r.min_scaled_margin,
             "argmin": r.argmin, "argmin_y": r.argmin_y, "passed": r.passed(LEMMA_TOL)}
            for r in reports
        ],
        "passed": ok,
    }
    _emit(args, "\n".join(lines), machine)
    return EXIT_OK if ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "machine"), default="text",
                     help="machine: canonical JSON with 17-digit floats")

    parser = argparse.ArgumentParser(prog="specht-young", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("specht", parents=[fmt], help="print Specht's ratio S(h)")
    p.add_argument("h", type=float, help="spread ratio, h > 0")
    p.set_defaults(func=cmd_specht)

    p = sub.add_parser("bounds", parents=[fmt], help="scalar Young bounds for a, b, nu")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--nu", type=float, required=True, help="weight in [0, 1]")
    p.add_argument("--tol", type=float, default=1e-10,
                   help="relative slack per comparison; negative demands a margin (default 1e-10)")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify-op", parents=[fmt], help="verify an operator chain on two matrix files")
    p.add_argument("matrix_a", help="JSON matrix document")
    p.add_argument("matrix_b", help="JSON matrix document")
    p.add_argument("--nu", type=float, required=True, help="weight in [0, 1]")
    p.add_argument("--mode", choices=("mult", "add", "classic"), default="mult")
    p.add_argument("--tol", type=float, default=1e-9, help="Loewner slack (default 1e-9)")
    p.add_argument("--bounds", type=_parse_bounds, default=None, metavar="m',m,M,M'",
                   help="spectral bounds to use instead of the tightest ones")
    p.set_defaults(func=cmd_verify_op)

    p = sub.add_parser("search", parents=[fmt], help="counterexample search for the n-term bound")
    p.add_argument("--n", type=int, default=3, help="number of points (default 3)")
    p.add_argument("--samples", type=int, default=100_000, help="random samples (default 100000)")
    p.add_argument("--restarts", type=int, default=20, help="local descents (default 20)")
    p.add_argument("--descent-iters", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--box", type=_parse_box, default=(0.1, 10.0), metavar="LO,HI",
                   help="range for the points (default 0.1,10)")
    p.add_argument("--workers", type=int, default=1, help="threads; the result does not depend on it")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("scan-lemmas", parents=[fmt], help="grid-check the supporting scalar lemmas")
    p.add_argument("--grid", type=int, default=100_000, help="grid points per lemma (default 100000)")
    p.add_argument("--max", type=float, default=100.0, help="upper end of the scanned domains (default 100)")
    p.set_defaults(func=cmd_scan_lemmas)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpechtYoungError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
