"""Command line: ``squarepack <subcommand> ...``.

Exit status is 0 on success or a valid packing, 1 for bad input or a failed
verification, 2 for an internal error.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import io
from .bounds import (Direction, chain_derive, check_certificate, epsilon_diagnostic, limit_bound,
                     step_one_bound, step_two_bound)
from .constructions import conjectured_value, construct_conjectured, decompose
from .geometry import side_sum, verify
from .search import SearchConfig, search

EXIT_OK, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _approx(q: Fraction) -> str:
    return f"{float(q):.4f}"


def _signed(c: int) -> str:
    return str(c) if c >= 0 else f"(−{-c})"


def conjecture_text(n: int) -> str:
    d = decompose(n)
    value = conjectured_value(n)
    if d.is_square:
        return f"{n} = {d.k}²; f = {d.k}"
    return f"{n} = {d.k}² + 2·{_signed(d.c)} + 1; conjectured f = {value} ≈ {_approx(value)}"


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {v}")
    return v


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def _schedule(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"schedule must be comma separated integers: {text!r}") from None


def _write(path: str | None, text: str, what: str, out) -> None:
    if not path:
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot write {what} to {path}: {e.strerror}") from None
    print(f"wrote {what}: {path}", file=out)


def cmd_conjecture(args, out) -> int:
    print(conjecture_text(args.n), file=out)
    return EXIT_OK


def cmd_construct(args, out) -> int:
    try:
        p = construct_conjectured(args.n, args.slack)
    except ValueError as e:
        raise UsageError(str(e)) from None
    report = verify(p)
    total = side_sum(p)
    print(f"n={args.n}: {len(p)} squares, side sum {total} ≈ {_approx(total)}, "
          f"conjectured {conjectured_value(args.n)}", file=out)
    print(f"verifier: {'OK' if report.valid else 'FAILED'}", file=out)
    _write(args.out_json, io.dumps_packing(p), "packing", out)
    _write(args.out_svg, io.packing_svg(p), "svg", out)
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_bound(args, out) -> int:
    direction = Direction(args.direction)
    k, c = args.k, args.c
    try:
        try:
            one, _ = step_one_bound(k, c, direction)
            print(f"step one ({direction.value}): f({k * k + 2 * c + 1}) <= {one} "
                  f"= {k + Fraction(c, k)} + {one - k - Fraction(c, k)}", file=out)
        except ValueError as e:
            print(f"step one ({direction.value}): not applicable ({e})", file=out)
        if args.b is not None:
            two, _ = step_two_bound(k, c, args.b, direction)
            print(f"step two at b={args.b}: f({k * k + 2 * c + 1}) <= {two} "
                  f"= {k + Fraction(c, k)} + {two - k - Fraction(c, k)}", file=out)
        cert = limit_bound(k, c, direction, args.schedule)
    except ValueError as e:
        raise UsageError(str(e)) from None
    for b, v in cert.witness:
        print(f"  b={b}: residual {v - cert.limit_claim}", file=out)
    print(f"limit as b grows: f({k * k + 2 * c + 1}) <= {cert.limit_claim} (assuming P({cert.premise}))", file=out)
    print(f"certificate check: {'OK' if check_certificate(cert) else 'FAILED'}", file=out)
    _write(args.out, io.dumps_certificate(cert), "certificate", out)
    return EXIT_OK


def cmd_chain(args, out) -> int:
    try:
        cert = chain_derive(args.start, args.target, args.k, args.schedule)
    except ValueError as e:
        raise UsageError(str(e)) from None
    for h in cert.hops:
        print(f"P({h.premise}) => P({h.c}) at k={h.k}: bound {h.final_bound} -> {h.limit_claim}", file=out)
    print(f"f({args.k ** 2 + 2 * args.target + 1}) <= {cert.limit_claim} assuming P({args.start}); "
          f"{len(cert.steps)} steps", file=out)
    ok = check_certificate(cert)
    print(f"certificate check: {'OK' if ok else 'FAILED'}", file=out)
    _write(args.out, io.dumps_certificate(cert), "certificate", out)
    return EXIT_OK if ok else EXIT_INVALID


def cmd_search(args, out) -> int:
    try:
        config = SearchConfig(n=args.n, seed=args.seed, restarts=args.restarts,
                              iterations_per_restart=args.iters, workers=args.workers,
                              snap_denominator_limit=args.denominator_limit)
    except ValueError as e:
        raise UsageError(str(e)) from None
    result = search(config)
    target = conjectured_value(args.n)
    print(f"n={args.n}: best float sum {result.best_float_sum:.6f}", file=out)
    if result.best_packing is None:
        print("no candidate survived exact snapping", file=out)
        return EXIT_OK
    total = side_sum(result.best_packing)
    print(f"best exact sum {total} ≈ {_approx(total)}; conjectured {target}; gap {result.conjecture_gap}",
          file=out)
    print(f"counterexample: {'YES' if result.counterexample_flag else 'no'}", file=out)
    path = args.out
    if result.counterexample_flag and not path:
        path = f"counterexample_n{args.n}.json"
    _write(path, io.dumps_packing(result.best_packing), "packing", out)
    _write(args.out_svg, io.packing_svg(result.best_packing), "svg", out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    try:
        text = Path(args.path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {args.path}: {e.strerror}") from None
    try:
        p = io.loads_packing(text)
    except io.DocumentError as e:
        raise UsageError(f"{args.path}: {e}") from None
    report = verify(p)
    print(f"{args.path}: {len(p)} squares, side sum {side_sum(p)}", file=out)
    for v in report.violations:
        where = ", ".join(map(str, v.indices))
        print(f"  {v.kind} ({where}) witness {tuple(str(w) for w in v.witness)}", file=out)
    print("valid" if report.valid else f"INVALID: {len(report.violations)} violation(s)", file=out)
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_epsilon(args, out) -> int:
    rows = []
    for item in args.records:
        try:
            k, c, est = item.split(",")
            rows.append((int(k), int(c), Fraction(est)))
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"record must look like k,c,estimate: {item!r}") from None
    print(f"{'k':>4} {'c':>4} {'estimate':>14} {'eps':>14} {'k*eps':>14}", file=out)
    for r in epsilon_diagnostic(rows):
        flag = "  above conjecture" if r.above_conjecture else ""
        print(f"{r.k:>4} {r.c:>4} {str(r.estimate):>14} {str(r.epsilon):>14} {str(r.k_epsilon):>14}{flag}",
              file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="squarepack", description="Square packings in the unit square: "
                     "conjectured values f(k^2+2c+1) = k + c/k, constructions, bounds and search.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("conjecture", help="decompose n and print the conjectured f(n)")
    p.add_argument("n", type=_positive_int)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("construct", help="build a packing reaching the conjectured sum")
    p.add_argument("n", type=_positive_int)
    p.add_argument("--slack", type=_rational, default=None,
                   help="positive deficit, required exactly when n = k^2 + 1 (default: none)")
    p.add_argument("--out-json", help="write the packing document here")
    p.add_argument("--out-svg", help="write an SVG figure here")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("bound", help="upper bound on f(k^2+2c+1) from a neighbouring statement")
    p.add_argument("k", type=_positive_int)
    p.add_argument("c", type=int)
    p.add_argument("--direction", choices=[d.value for d in Direction], default="below",
                   help="below: assume P(c-1); above: assume P(c+1) (default: below)")
    p.add_argument("--b", type=_positive_int, default=None, help="also report the second step at this b")
    p.add_argument("--schedule", type=_schedule, default=None,
                   help="comma separated increasing b values (default: powers of ten up to 10^6)")
    p.add_argument("--out", help="write the certificate document here")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("chain", help="certificate for P(target) assuming P(start)")
    p.add_argument("--start", type=int, required=True)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--schedule", type=_schedule, default=None,
                   help="comma separated increasing b values (default: powers of ten up to 10^6)")
    p.add_argument("--out", help="write the certificate document here")
    p.set_defaults(func=cmd_chain)

    defaults = SearchConfig(n=1)
    p = sub.add_parser("search", help="annealing search for a packing with large side sum")
    p.add_argument("n", type=_positive_int)
    p.add_argument("--seed", type=int, default=defaults.seed, help=f"default: {defaults.seed}")
    p.add_argument("--restarts", type=_positive_int, default=defaults.restarts,
                   help=f"default: {defaults.restarts}")
    p.add_argument("--iters", type=_positive_int, default=defaults.iterations_per_restart,
                   help=f"iterations per restart (default: {defaults.iterations_per_restart})")
    p.add_argument("--workers", type=_positive_int, default=1, help="parallel restarts (default: 1)")
    p.add_argument("--denominator-limit", type=_positive_int, default=defaults.snap_denominator_limit,
                   help=f"snap denominator bound (default: {defaults.snap_denominator_limit})")
    p.add_argument("--out", help="write the best packing here (always written on a counterexample)")
    p.add_argument("--out-svg", help="write an SVG figure of the best packing here")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="check a packing document exactly")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("epsilon", help="epsilon(k) = estimate - (k + c/k) and k*epsilon(k)")
    p.add_argument("records", nargs="+", metavar="k,c,estimate",
                   help="estimate as a rational or decimal, e.g. 2,0,1.98")
    p.set_defaults(func=cmd_epsilon)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as e:  # noqa: BLE001 - anything else is our bug
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
