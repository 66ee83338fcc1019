"""Text formats for arrays, masks, data vectors and matrix dumps.

Array file: m non-blank lines of n comma-separated tokens.  A token is an
integer (decimal or 0x hex), a power form (``0``, ``1``, ``a``, ``a^k``) or
``E`` for an erased cell.  ``#`` starts a comment; blank lines are skipped.
Line and column numbers in errors are 1-based and refer to the raw text.
"""

from __future__ import annotations

import re
from typing import Iterator, Sequence

import numpy as np

from .code import ErasurePattern, GcCode
from .errors import ParseError
from .galois import FieldSpec
from .linalg import Matrix

ERASED = "E"
_SPLIT = re.compile(r"[^,\s]+")


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if line.strip():
            yield lineno, line


def _row_tokens(line: str, lineno: int) -> list[tuple[int, str]]:
    """Comma-separated tokens with their 1-based start columns."""
    out = []
    pos = 0
    for piece in line.split(","):
        stripped = piece.strip()
        col = pos + (len(piece) - len(piece.lstrip())) + 1
        if not stripped:
            raise ParseError("empty token", lineno, col)
        out.append((col, stripped))
        pos += len(piece) + 1
    return out


def parse_array(text: str, field: FieldSpec, shape: tuple[int, int]) -> tuple[np.ndarray, ErasurePattern]:
    """Values (erased cells zero) and the inline erasure pattern."""
    m, n = shape
    values = np.zeros(shape, dtype=np.int64)
    mask = np.zeros(shape, dtype=bool)
    count = 0
    for lineno, line in _content_lines(text):
        if count == m:
            raise ParseError(f"expected {m} rows, found more", lineno)
        tokens = _row_tokens(line, lineno)
        for j, (col, tok) in enumerate(tokens[:n]):
            if tok == ERASED:
                mask[count, j] = True
                continue
            try:
                values[count, j] = field.parse(tok)
            except ParseError as exc:
                raise ParseError(str(exc), lineno, col) from None
        if len(tokens) != n:
            raise ParseError(f"expected {n} tokens, found {len(tokens)}", lineno)
        count += 1
    if count != m:
        raise ParseError(f"expected {m} rows, found {count}")
    return values, ErasurePattern.from_array(mask)


def parse_mask(text: str, shape: tuple[int, int]) -> ErasurePattern:
    """0/1 grid; cells separated by commas, blanks, or written back to back."""
    m, n = shape
    lines = list(_content_lines(text))
    if len(lines) != m:
        raise ParseError(f"expected {m} mask rows, found {len(lines)}")
    rows = []
    for lineno, line in lines:
        cells = []
        for match in _SPLIT.finditer(line):
            for k, ch in enumerate(match.group()):
                if ch not in "01":
                    raise ParseError(f"mask cell must be 0 or 1, got {ch!r}",
                                     lineno, match.start() + k + 1)
                cells.append(ch == "1")
        if len(cells) != n:
            raise ParseError(f"expected {n} mask cells, found {len(cells)}", lineno)
        rows.append(tuple(cells))
    return ErasurePattern(tuple(rows))


def parse_data(text: str, field: FieldSpec) -> list[int]:
    """Flat list of symbols separated by commas and/or whitespace."""
    out = []
    for lineno, line in _content_lines(text):
        for match in _SPLIT.finditer(line):
            try:
                out.append(field.parse(match.group()))
            except ParseError as exc:
                raise ParseError(str(exc), lineno, match.start() + 1) from None
    return out


def format_array(grid, field: FieldSpec, notation: str,
                 erasures: ErasurePattern | None = None) -> str:
    grid = np.asarray(grid).tolist()
    mask = erasures.mask if erasures is not None else None
    lines = []
    for i, row in enumerate(grid):
        toks = [ERASED if mask is not None and mask[i][j] else field.format(x, notation)
                for j, x in enumerate(row)]
        lines.append(", ".join(toks))
    return "\n".join(lines) + "\n"


def format_mask(pattern: ErasurePattern) -> str:
    return "".join(",".join("1" if e else "0" for e in row) + "\n" for row in pattern.mask)


def band_sizes(code: GcCode) -> list[int]:
    """Row counts of the blocks of H, top block first."""
    prof = code.profile
    sizes = [code.m * prof.u0]
    sizes += [prof.s(i) * (prof.u(i) - prof.u0) for i in range(prof.t - 1, 0, -1)]
    return sizes


def format_matrix(mat: Matrix, notation: str, col_block: int | None = None,
                  row_bands: Sequence[int] = ()) -> str:
    """Aligned dump: `` | `` between column blocks, dashed rules between row bands."""
    toks = [[mat.field.format(x, notation) for x in row] for row in mat.tolist()]
    width = max((len(t) for row in toks for t in row), default=1)
    step = col_block or mat.cols or 1
    lines = []
    for row in toks:
        cells = [t.rjust(width) for t in row]
        lines.append(" | ".join(" ".join(cells[k:k + step]) for k in range(0, len(cells), step)))
    rule = "-" * (len(lines[0]) if lines else 0)
    out = []
    cuts = set()
    acc = 0
    for size in list(row_bands)[:-1]:
        acc += size
        cuts.add(acc)
    for i, line in enumerate(lines):
        if i in cuts:
            out.append(rule)
        out.append(line)
    return "\n".join(out) + "\n"


def format_code_matrix(code: GcCode, notation: str) -> str:
    return format_matrix(code.h, notation, col_block=code.n, row_bands=band_sizes(code))
