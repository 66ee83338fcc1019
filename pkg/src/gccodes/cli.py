"""``gccodes`` command line.

Exit codes: 0 success, 1 input or parse error, 2 uncorrectable,
3 pattern budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import oracle
from .code import CodeConfig, ErasurePattern, GcCode, correctable_by_theorem, min_distance_formula
from .codec import ArrayWord, decode, encode
from .errors import BudgetExceeded, GcError, ParseError, Uncorrectable
from .textio import (format_array, format_code_matrix, parse_array, parse_data, parse_mask)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNCORRECTABLE = 2
EXIT_BUDGET = 3


class _InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors (exit 1), not argparse's default 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _read(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise _InputError(f"cannot write {path}: {exc.strerror}") from None


def load_code(path: str) -> GcCode:
    try:
        config = CodeConfig.from_json(_read(path))
    except json.JSONDecodeError as exc:
        raise ParseError(f"config is not valid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return config.build()


def _notation(args, code: GcCode) -> str:
    if args.format:
        return args.format
    return "power" if code.field.b <= 4 else "int"


def _received(args, code: GcCode) -> ArrayWord:
    """Array from --in with erasures from inline E tokens and/or --erasures."""
    values, inline = parse_array(_read(args.input), code.field, code.shape)
    pattern = inline
    if args.erasures:
        mask = parse_mask(_read(args.erasures), code.shape)
        if inline.weight and mask != inline:
            raise _InputError("inline E tokens and the erasure mask disagree")
        pattern = mask
    return ArrayWord(values, pattern)


def _pattern(args, code: GcCode) -> ErasurePattern:
    if args.erasures:
        return parse_mask(_read(args.erasures), code.shape)
    return _received(args, code).erasures


def cmd_build(args) -> int:
    code = load_code(args.config)
    _write(args.out, format_code_matrix(code, _notation(args, code)))
    return EXIT_OK


def cmd_encode(args) -> int:
    code = load_code(args.config)
    data = parse_data(_read(args.input), code.field)
    placement = parse_mask(_read(args.placement), code.shape) if args.placement else None
    word = encode(code, data, placement)
    _write(args.out, format_array(word.grid, code.field, _notation(args, code)))
    return EXIT_OK


def cmd_decode(args) -> int:
    code = load_code(args.config)
    word = _received(args, code)
    if args.brute_force:
        report = oracle.brute_solve(code, word)
        if not (report.solvable and report.consistent):
            raise Uncorrectable("erased columns of H are dependent or the word is inconsistent")
        result = report.fill(word)
    else:
        result = decode(code, word, verify=not args.no_verify)
    _write(args.out, format_array(result.grid, code.field, _notation(args, code)))
    return EXIT_OK


def cmd_check(args) -> int:
    code = load_code(args.config)
    pattern = _pattern(args, code)
    ok = correctable_by_theorem(pattern, code)
    counts = ",".join(str(c) for c in sorted(pattern.row_counts, reverse=True))
    budgets = ",".join(str(b) for b in code.profile.budgets)
    lines = [f"{'correctable' if ok else 'uncorrectable'}",
             f"sorted erasures: {counts}",
             f"budgets: {budgets}"]
    if args.brute_force:
        solvable = oracle.columns_independent(code, pattern.cells())
        lines.append(f"oracle: {'solvable' if solvable else 'unsolvable'}")
    _write(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_mindist(args) -> int:
    code = load_code(args.config)
    formula = min_distance_formula(code)
    lines = [f"formula: {formula}"]
    if args.brute_force:
        cap = args.cap if args.cap is not None else formula
        found = oracle.min_distance_search(code, cap)
        if isinstance(found, oracle.AboveCap):
            lines.append(f"brute-force: >{found.cap}")
            lines.append("agree: no")
        else:
            lines.append(f"brute-force: {found}")
            lines.append(f"agree: {'yes' if found == formula else 'no'}")
    _write(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_sweep(args) -> int:
    code = load_code(args.config)
    budget = args.budget if args.budget is not None else oracle.DEFAULT_BUDGET
    table = oracle.exhaustive_capability(code, budget=budget)
    _write(args.out, "\n".join(table.summary_lines()) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gccodes", description="GC erasure codes over GF(2^b) arrays")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, *, inp=False, fmt=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, metavar="PATH", help="JSON code config")
        p.add_argument("--out", metavar="PATH", help="output file (default stdout)")
        if inp:
            p.add_argument("--in", dest="input", metavar="PATH", help="input file (default stdin)")
        if fmt:
            p.add_argument("--format", choices=("power", "int"),
                           help="symbol notation (default power for b <= 4, else int)")
        p.set_defaults(func=func)
        return p

    add("build", cmd_build, "print the parity-check matrix", fmt=True)

    p = add("encode", cmd_encode, "encode a data file", inp=True, fmt=True)
    p.add_argument("--placement", metavar="PATH", help="0/1 mask of parity cells")

    p = add("decode", cmd_decode, "fill the erasures of an array file", inp=True, fmt=True)
    p.add_argument("--erasures", metavar="PATH", help="0/1 erasure mask")
    p.add_argument("--no-verify", action="store_true", help="skip the final syndrome check")
    p.add_argument("--brute-force", action="store_true", help="solve all erasures at once")

    p = add("check", cmd_check, "is an erasure pattern correctable", inp=True)
    p.add_argument("--erasures", metavar="PATH", help="0/1 erasure mask")
    p.add_argument("--brute-force", action="store_true", help="also report linear solvability")

    p = add("mindist", cmd_mindist, "minimum distance")
    p.add_argument("--brute-force", action="store_true", help="also search dependent columns")
    p.add_argument("--cap", type=int, help="largest subset size searched (default: formula value)")

    p = add("sweep", cmd_sweep, "classify every pattern of weight <= r")
    p.add_argument("--budget", type=int, metavar="N", help="maximum number of patterns")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Uncorrectable as exc:
        print(f"gccodes: uncorrectable: {exc}", file=sys.stderr)
        return EXIT_UNCORRECTABLE
    except BudgetExceeded as exc:
        print(f"gccodes: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GcError, _InputError, ValueError) as exc:
        print(f"gccodes: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
