"""Command line front end.

Point ids on the command line and in all output are 1-based.
Exit status: 0 success, 1 not Robinson or check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time
from typing import Optional, Sequence, TextIO

from .core import DEFAULT_PRECISION, ValidationError, first_violation, read_matrix, write_matrix
from .mmodules import mmodule_tree
from .recognizer import HoleWitness, recognize
from .testkit import KINDS, GeneratorSpec, generate

EXIT_OK = 0
EXIT_NO = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


def _load(path: str, precision: int):
    try:
        if path == "-":
            return read_matrix(sys.stdin, precision)
        return read_matrix(path, precision)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except ValidationError as exc:
        raise InputError(str(exc)) from None


def _ids(seq: Sequence[int]) -> str:
    return " ".join(str(x + 1) for x in seq)


def _emit(out: TextIO, kv: bool, pairs: list[tuple[str, str]], text: list[str]) -> None:
    if kv:
        for k, v in pairs:
            out.write(f"{k}={v}\n")
    else:
        for line in text:
            out.write(line + "\n")


def cmd_recognize(args, out: TextIO) -> int:
    space = _load(args.file, args.precision)
    res = recognize(space)
    if res.robinson:
        _emit(out, args.kv, [("verdict", "robinson"), ("order", _ids(res.order))], [_ids(res.order)])
        return EXIT_OK
    w = res.witness
    if isinstance(w, HoleWitness):
        pairs = [("verdict", "not-robinson"), ("witness", "no-hole"), ("p", str(w.p + 1)), ("block", _ids(w.block))]
        text = ["NOT ROBINSON", f"no admissible hole for point {w.p + 1} in copoint {_ids(w.block)}"]
    else:
        pairs = [
            ("verdict", "not-robinson"),
            ("witness", "violation"),
            ("row", str(w.row + 1)),
            ("pair", f"{w.a + 1} {w.b + 1}"),
            ("order", _ids(res.order)),
        ]
        text = ["NOT ROBINSON", f"row {w.row + 1} decreases from {w.a + 1} to {w.b + 1} in the candidate order"]
    _emit(out, args.kv, pairs, text)
    return EXIT_NO


def _parse_order(text: str, n: int) -> list[int]:
    try:
        order = [int(tok) - 1 for tok in text.replace(",", " ").split()]
    except ValueError:
        raise InputError("order must be a list of integers") from None
    if len(order) != n:
        raise InputError(f"order has {len(order)} ids, expected {n}")
    if sorted(order) != list(range(n)):
        raise InputError(f"order must be a permutation of 1..{n}")
    return order


def cmd_check(args, out: TextIO) -> int:
    space = _load(args.file, args.precision)
    order = _parse_order(args.order, space.n)
    bad = first_violation(space, order)
    if bad is None:
        _emit(out, args.kv, [("check", "ok")], ["OK"])
        return EXIT_OK
    row, a, b = bad
    _emit(
        out,
        args.kv,
        [("check", "failed"), ("row", str(row + 1)), ("pair", f"{a + 1} {b + 1}")],
        ["VIOLATION", f"row {row + 1} decreases from {a + 1} to {b + 1}"],
    )
    return EXIT_NO


def cmd_mmtree(args, out: TextIO) -> int:
    space = _load(args.file, args.precision)
    if space.n == 0:
        raise InputError("empty space has no tree")
    text = mmodule_tree(space).to_text(offset=1)
    _emit(out, args.kv, [("tree", text)], [text])
    return EXIT_OK


def _spec(args, n: int, seed: int) -> GeneratorSpec:
    return GeneratorSpec(kind=args.kind, n=n, seed=seed, max_val=args.max_val, shuffle=args.shuffle, perturb=args.perturb)


def cmd_gen(args, out: TextIO) -> int:
    if args.n < 0:
        raise InputError("--n must be nonnegative")
    if args.max_val < 1:
        raise InputError("--max-val must be at least 1")
    space = generate(_spec(args, args.n, args.seed))
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            write_matrix(space, fh)
    else:
        write_matrix(space, out)
    return EXIT_OK


def cmd_bench(args, out: TextIO) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise InputError("--sizes must be comma separated integers") from None
    if not sizes or any(s < 1 for s in sizes):
        raise InputError("--sizes needs positive integers")
    if args.repeats < 1:
        raise InputError("--repeats must be at least 1")
    if not args.kv:
        out.write(f"{'n':>8} {'mean_s':>10} {'ratio':>7}\n")
    prev = None
    for n in sizes:
        times = []
        for r in range(args.repeats):
            space = generate(_spec(args, n, args.seed + r))
            space.rows  # noqa: B018 - build the row cache outside the timed region
            t0 = time.perf_counter()
            recognize(space)
            times.append(time.perf_counter() - t0)
        mean = statistics.fmean(times)
        ratio = "" if prev is None else f"{mean / prev:.2f}"
        if args.kv:
            out.write(f"n={n} mean_s={mean:.6f} ratio={ratio or '-'}\n")
        else:
            out.write(f"{n:>8} {mean:>10.4f} {ratio or '-':>7}\n")
        prev = mean
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="robinson", description="Recognize Robinson dissimilarities.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p):
        p.add_argument("file", help="matrix file, or - for stdin")
        p.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="fractional digits kept (default 6)")

    def with_format(p):
        p.add_argument("--kv", action="store_true", help="print key=value lines")

    p = sub.add_parser("recognize", help="find a compatible order or report why there is none")
    with_input(p)
    with_format(p)
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("check", help="test an order against the Robinson property")
    with_input(p)
    with_format(p)
    p.add_argument("--order", required=True, help='1-based ids, e.g. "3 1 2"')
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("mmtree", help="print the mmodule tree")
    with_input(p)
    with_format(p)
    p.set_defaults(func=cmd_mmtree)

    def with_gen(p):
        p.add_argument("--kind", choices=KINDS, default="toeplitz")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-val", type=int, default=2, help="largest Toeplitz value")
        p.add_argument("--shuffle", action=argparse.BooleanOptionalAction, default=True)
        p.add_argument("--perturb", type=int, default=0, help="number of random pair rewrites")

    p = sub.add_parser("gen", help="write a generated instance")
    with_gen(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time recognition on generated instances")
    with_gen(p)
    with_format(p)
    p.add_argument("--sizes", default="500,1000,2000")
    p.add_argument("--repeats", type=int, default=3)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
