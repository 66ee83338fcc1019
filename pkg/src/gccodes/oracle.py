"""Brute-force checks that work straight from the parity-check matrix.

Nothing here uses the row-by-row decoder's machinery: erasures are filled by
one linear solve over all erased columns, distance comes from the smallest
dependent column set, and capability sweeps enumerate every pattern.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb
from typing import Sequence

import numpy as np

from ._backend import kernels
from .code import ErasurePattern, GcCode, correctable_by_theorem
from .errors import BudgetExceeded, ShapeMismatch, Uncorrectable
from .linalg import Matrix, solve_square, vandermonde_h, vandermonde_hhat

DEFAULT_BUDGET = 5_000_000


@dataclass(frozen=True)
class OracleReport:
    solvable: bool
    solution: tuple[int, ...] | None = None
    witness: tuple[int, ...] | None = None
    consistent: bool = True

    def fill(self, word) -> "ArrayWord":
        """The received word with its erasures replaced by ``solution``."""
        from .codec import ArrayWord
        if self.solution is None:
            raise Uncorrectable("oracle has no solution for this word")
        grid = word.grid.copy().reshape(-1)
        grid[word.erasures.cells()] = self.solution
        return ArrayWord(grid.reshape(word.shape))


@dataclass(frozen=True)
class AboveCap:
    """No dependent column set of size <= cap: the distance exceeds cap."""

    cap: int


def brute_solve(code: GcCode, word) -> OracleReport:
    """Solve H[:, erased] x = H v (erased cells zero) in one elimination."""
    if word.shape != code.shape:
        raise ShapeMismatch(f"word {word.shape} for a {code.shape} code")
    f = code.field
    cells = word.erasures.cells()
    synd = code.h @ word.grid.reshape(-1)
    if not cells:
        return OracleReport(True, (), consistent=not np.any(synd))
    status, x = kernels.solve(code.h.data[:, cells], synd, f.exp_arr, f.log_arr, f.order)
    if status == 1:
        return OracleReport(False)
    if status == 2:
        return OracleReport(True, None, consistent=False)
    return OracleReport(True, tuple(int(v) for v in x))


def columns_independent(code: GcCode, cells: Sequence[int]) -> bool:
    if not cells:
        return True
    f = code.field
    return kernels.rank(code.h.data[:, list(cells)], f.exp_arr, f.log_arr, f.order) == len(cells)


def dependent_columns(code: GcCode, cap: int) -> tuple[int, tuple[int, ...]] | None:
    """Smallest w <= cap with w dependent columns of H, and the lex-first such set."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    f = code.field
    h = code.h.data
    for w in range(1, min(cap, h.shape[1]) + 1):
        found = kernels.first_dependent(h, w, f.exp_arr, f.log_arr, f.order)
        if found is not None:
            return w, tuple(found)
    return None


def min_distance_search(code: GcCode, cap: int) -> int | AboveCap:
    found = dependent_columns(code, cap)
    return AboveCap(cap) if found is None else found[0]


def min_distance_report(code: GcCode, cap: int) -> OracleReport:
    found = dependent_columns(code, cap)
    if found is None:
        return OracleReport(False)
    return OracleReport(True, witness=found[1])


def _null_vector(a: Matrix) -> list[int]:
    """Kernel vector of a k x (k+1) matrix of full rank, last coordinate 1."""
    k = a.rows
    if k == 0:
        return [1]
    head = Matrix(a.field, a.data[:, :k])
    return solve_square(head, a.data[:, k]) + [1]


def witness_codeword(code: GcCode, level: int):
    """Nonzero codeword of weight (s_hat(level+1) + 1)(u_level + 1).

    A weight-(u+1) word of the row code H(u_level, n; 0) is repeated on the
    top s_hat(level+1) + 1 rows, scaled by a full-weight word of the code
    checked by Hhat(s_hat(level+1), s_hat(level+1) + 1; 0).
    """
    from .codec import ArrayWord
    prof = code.profile
    if not 0 <= level < prof.t:
        raise ValueError(f"level must be in 0..{prof.t - 1}")
    f, m, n = code.field, code.m, code.n
    u = prof.u(level)
    rows_used = prof.s_hat(level + 1) + 1
    row_word = _null_vector(Matrix(f, vandermonde_h(f, u, n, 0).data[:, :u + 1]))
    if rows_used > 1:
        coeffs = _null_vector(vandermonde_hhat(f, rows_used - 1, rows_used, 0))
    else:
        coeffs = [1]
    grid = np.zeros((m, n), dtype=np.int64)
    for i, c in enumerate(coeffs):
        grid[i, :u + 1] = f.scale_arr(c, row_word)
    weight = int(np.count_nonzero(grid))
    if weight != rows_used * (u + 1) or np.any(code.h @ grid.reshape(-1)):
        raise RuntimeError(f"level {level}: constructed word is not a codeword of the claimed weight")
    return ArrayWord(grid)


def pattern_count(code: GcCode, max_weight: int | None = None) -> int:
    cells = code.m * code.n
    top = code.r if max_weight is None else max_weight
    return sum(comb(cells, w) for w in range(top + 1))


@dataclass
class CapabilityTable:
    """Per-class counts of (theorem_correctable, oracle_solvable, decoder_outcome)."""

    code: GcCode = dc_field(repr=False)
    patterns: int = 0
    classes: Counter = dc_field(default_factory=Counter)
    counterexamples: list = dc_field(default_factory=list)
    beyond_theorem: list = dc_field(default_factory=list)   # oracle-only examples

    def count(self, theorem: bool | None = None, oracle: bool | None = None,
              decoder: str | None = None) -> int:
        return sum(v for (t, o, d), v in self.classes.items()
                   if (theorem is None or t == theorem)
                   and (oracle is None or o == oracle)
                   and (decoder is None or d == decoder))

    def summary_lines(self) -> list[str]:
        lines = [f"patterns: {self.patterns}"]
        for (t, o, d), v in sorted(self.classes.items()):
            lines.append(f"theorem={'yes' if t else 'no'} oracle={'yes' if o else 'no'} "
                         f"decoder={d}: {v}")
        lines.append(f"counterexamples: {len(self.counterexamples)}")
        return lines


def exhaustive_capability(code: GcCode, budget: int = DEFAULT_BUDGET,
                          max_weight: int | None = None, seed: int = 0,
                          n_codewords: int = 8) -> CapabilityTable:
    """Classify every erasure pattern of weight <= r (or ``max_weight``).

    Each pattern erases one of ``n_codewords`` random codewords (rotating);
    the decoder counts as ``ok`` only when it restores that codeword.  A
    counterexample is a theorem-correctable pattern where the oracle fails,
    the decoder fails, or the two disagree.
    """
    from .codec import ArrayWord, decode, encode

    total = pattern_count(code, max_weight)
    if total > budget:
        raise BudgetExceeded(f"{total} patterns exceed the budget of {budget}")
    rng = np.random.default_rng(seed)
    words = [encode(code, rng.integers(0, code.field.size, code.k)) for _ in range(n_codewords)]
    m, n = code.shape
    table = CapabilityTable(code)
    top = code.r if max_weight is None else max_weight
    index = 0
    for w in range(top + 1):
        for cells in combinations(range(m * n), w):
            pattern = ErasurePattern.from_cells(m, n, cells)
            original = words[index % n_codewords]
            index += 1
            received = original.erase(pattern)
            theorem = correctable_by_theorem(pattern, code)
            report = brute_solve(code, received)
            try:
                decoded = decode(code, received)
                outcome = "ok" if decoded == original else "wrong"
            except Uncorrectable:
                decoded = None
                outcome = "uncorrectable"
            table.classes[(theorem, report.solvable, outcome)] += 1
            if theorem:
                agree = (report.solution is not None and decoded is not None
                         and report.fill(received) == decoded)
                if not (report.solvable and outcome == "ok" and agree):
                    table.counterexamples.append(cells)
            elif report.solvable and len(table.beyond_theorem) < 10:
                table.beyond_theorem.append(cells)
    table.patterns = index
    return table
