"""Command-line front end.

    hyperincl enclose MATRIX [--method fast6] [--mode bigfloat --precision 256] ...
    hyperincl er-table --n-min 2 --n-max 40 --bits 64,128 --out er.csv
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import report
from .efficiency import emit_er_table, er_table_csv
from .errors import (
    ConvergenceConditionError,
    EmptyIntersectionError,
    NoInitialEnclosureError,
    ParseError,
)
from .hyperpower import InitConfig, Scaling, parse_method, run
from .matrix import NormKind, parse_matrix
from .scalar import parse_mode

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NO_INIT = 3
EXIT_EMPTY = 4
EXIT_IO = 5
EXIT_UNVERIFIED = 6


def _bits(text):
    try:
        bits = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad bit list {text!r}") from None
    if not bits:
        raise argparse.ArgumentTypeError("empty bit list")
    return bits


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperincl", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enclose", help="enclose the inverse of a matrix read from a file")
    e.add_argument("matrix", help="matrix file ('-' for stdin)")
    e.add_argument("--method", default="fast6", help="fast6, horner6, hp3 or general")
    e.add_argument("--order", type=int, default=None, help="order r for --method general")
    e.add_argument("--mode", default="bigfloat", choices=["float", "bigfloat", "rational"])
    e.add_argument("--precision", type=int, default=256, help="bits for --mode bigfloat")
    e.add_argument("--norm", default="frobenius", choices=[k.value for k in NormKind])
    e.add_argument("--scaling", default="auto", choices=[s.value for s in Scaling])
    e.add_argument("--tol", type=float, default=1e-30)
    e.add_argument("--max-iters", type=int, default=50)
    e.add_argument("--strict", action="store_true",
                   help="fail unless the convergence condition is verified")
    e.add_argument("--format", default="text", choices=["text", "json"])
    e.add_argument("--digits", type=int, default=20, help="significant digits of midpoints")

    t = sub.add_parser("er-table", help="write the Horner-6 / fast-6 efficiency ratio as CSV")
    t.add_argument("--n-min", type=int, default=2)
    t.add_argument("--n-max", type=int, default=40)
    t.add_argument("--bits", type=_bits, default=[64, 128])
    t.add_argument("--out", default="-", help="CSV path ('-' for stdout)")
    return p


def cmd_enclose(args, stdout) -> int:
    try:
        if args.matrix == "-":
            text = sys.stdin.read()
        else:
            with open(args.matrix, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {args.matrix}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        mode = parse_mode(args.mode, args.precision)
        method = parse_method(args.method, args.order)
        cfg = InitConfig(norm=NormKind(args.norm), scaling=Scaling(args.scaling),
                         tol=args.tol, max_iters=args.max_iters)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        A = parse_matrix(text).to_mode(mode)
    except ParseError as exc:
        print(f"error: {args.matrix}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        result = run(A, method, cfg, verify=True, strict=args.strict)
    except NoInitialEnclosureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_INIT
    except EmptyIntersectionError as exc:
        print(f"error: step {exc.step}: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except ConvergenceConditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNVERIFIED
    if args.format == "json":
        stdout.write(report.to_json(result, mode, args.digits) + "\n")
    else:
        stdout.write(report.to_text(result, mode, args.digits))
    return EXIT_OK


def cmd_er_table(args, stdout) -> int:
    if not 2 <= args.n_min <= args.n_max:
        print("error: need 2 <= n-min <= n-max", file=sys.stderr)
        return EXIT_PARSE
    rows = emit_er_table(range(args.n_min, args.n_max + 1), args.bits)
    data = er_table_csv(rows)
    if args.out == "-":
        stdout.write(data)
        return EXIT_OK
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(data)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv=None, stdout=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    stdout = stdout or sys.stdout
    if args.command == "enclose":
        return cmd_enclose(args, stdout)
    return cmd_er_table(args, stdout)


if __name__ == "__main__":
    sys.exit(main())
