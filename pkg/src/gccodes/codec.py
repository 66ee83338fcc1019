"""Erasure decoding by successive row solves, and encoding as a special case.

The received array is row-sorted by erasure count (most first).  The global
band coefficients are reduced to upper unit-triangular form for that row
order, which gives a parity-check matrix where sorted row j only meets
columns of rows j..m-1.  Rows are then solved bottom-up, each as a small
Reed-Solomon erasure problem, updating the pending syndromes after each.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from ._backend import kernels
from .code import ErasurePattern, GcCode, correctable_by_theorem
from .errors import InvalidPlacement, RankDeficient, ShapeMismatch, Singular, Uncorrectable
from .linalg import Matrix, row_reduce_to_upper_unit, solve_square


class ArrayWord:
    """An m x n array of symbols plus its erasure mask (erased values ignored)."""

    __slots__ = ("grid", "erasures")

    def __init__(self, grid, erasures: ErasurePattern | None = None):
        arr = np.array(grid, dtype=np.int64, ndmin=2)
        m, n = arr.shape
        if erasures is None:
            erasures = ErasurePattern.empty(m, n)
        if erasures.shape != (m, n):
            raise ShapeMismatch(f"mask {erasures.shape} does not match grid {arr.shape}")
        if erasures.weight:
            arr[erasures.as_array()] = 0
        arr.setflags(write=False)
        self.grid = arr
        self.erasures = erasures

    @property
    def shape(self) -> tuple[int, int]:
        return self.grid.shape

    @property
    def complete(self) -> bool:
        return self.erasures.weight == 0

    def flat(self) -> np.ndarray:
        return self.grid.reshape(-1)

    def erase(self, pattern: ErasurePattern) -> "ArrayWord":
        return ArrayWord(self.grid, pattern)

    def tolist(self) -> list[list[int]]:
        return self.grid.tolist()

    def __eq__(self, other):
        if not isinstance(other, ArrayWord):
            return NotImplemented
        return self.erasures == other.erasures and np.array_equal(self.grid, other.grid)

    def __repr__(self):
        return f"ArrayWord({self.grid.tolist()}, erased={self.erasures.weight})"


@dataclass(frozen=True)
class RowPermutation:
    """``sigma[i]`` is the position of original row i in the sorted array."""

    sigma: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.sigma) != list(range(len(self.sigma))):
            raise ValueError(f"not a permutation: {self.sigma}")

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        """``inverse[j]`` is the original row placed at sorted position j."""
        inv = [0] * len(self.sigma)
        for i, j in enumerate(self.sigma):
            inv[j] = i
        return tuple(inv)

    def apply(self, rows: Sequence):
        return [rows[i] for i in self.inverse]

    def unapply(self, rows: Sequence):
        return [rows[j] for j in self.sigma]

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.sigma))


def identity_permutation(m: int) -> RowPermutation:
    return RowPermutation(tuple(range(m)))


def sort_rows(pattern: ErasurePattern) -> RowPermutation:
    """Stable sort of rows by erasure count, most erasures first."""
    counts = pattern.row_counts
    order = sorted(range(len(counts)), key=lambda i: -counts[i])
    sigma = [0] * len(order)
    for j, i in enumerate(order):
        sigma[i] = j
    return RowPermutation(tuple(sigma))


@dataclass(frozen=True)
class RowPlan:
    row: int            # row of the sorted array
    start: int          # first syndrome index of this row's group
    budget: int         # group size = erasures this row may carry
    level: int
    local_check: Matrix  # H(budget, n; 0)


@dataclass(frozen=True, eq=False)
class PseudoTriangularH:
    """Decoding matrix for one row order, kept in factored form.

    ``coefficients`` is the permuted Vandermonde (s_hat(1) x m) before
    reduction, ``reduced`` the upper unit-triangular form (the gammas) and
    ``transform`` the row operations.  The full r x mn matrix, in sorted
    array coordinates, is assembled on demand by :attr:`matrix`.
    """

    code: GcCode = dc_field(repr=False)
    sigma: RowPermutation
    coefficients: Matrix = dc_field(repr=False)
    reduced: Matrix = dc_field(repr=False)
    transform: Matrix = dc_field(repr=False)
    row_plan: tuple[RowPlan, ...] = dc_field(repr=False)

    @property
    def gammas(self) -> Matrix:
        return self.reduced

    @property
    def r(self) -> int:
        return self.code.r

    @cached_property
    def matrix(self) -> Matrix:
        code = self.code
        f, m, n = code.field, code.m, code.n
        u0 = code.profile.u0
        full = code.local_check(code.profile.u_max).data
        out = np.zeros((code.r, m * n), dtype=np.int64)
        for plan in self.row_plan:
            j, row = plan.row, plan.start
            out[row:row + u0, j * n:(j + 1) * n] = full[:u0]
            for p in range(u0, plan.budget):
                for jj in range(j, m):
                    coef = int(self.reduced.data[j, jj])
                    out[row + p, jj * n:(jj + 1) * n] = f.scale_arr(coef, full[p])
        return Matrix(f, out)


@dataclass(frozen=True)
class SyndromeVector:
    values: tuple[int, ...]

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)


def triangularize(code: GcCode, sigma: RowPermutation) -> PseudoTriangularH:
    prof = code.profile
    f, m = code.field, code.m
    if len(sigma.sigma) != m:
        raise ShapeMismatch(f"permutation of {len(sigma.sigma)} rows for {m}-row code")
    s1 = prof.s_hat(1)
    if s1:
        expo = -np.outer(np.arange(s1), np.array(sigma.inverse)) % f.order
        coefficients = Matrix(f, f.exp_arr[expo])
        reduced, transform = row_reduce_to_upper_unit(coefficients)
        # applying the row operations bandwise needs them to only mix a row
        # with rows above it (whose local checks contain its own)
        if np.any(np.triu(transform.data, 1)):
            raise RankDeficient("row operations are not lower triangular")
    else:
        coefficients = reduced = Matrix.zeros(f, 0, m)
        transform = Matrix.zeros(f, 0, 0)
    return PseudoTriangularH(code, sigma, coefficients, reduced, transform, _row_plan(code))


def _row_plan(code: GcCode) -> tuple[RowPlan, ...]:
    """Syndrome groups per sorted row; the same for every row order."""
    def build():
        prof = code.profile
        plan = []
        start = 0
        for j, budget in enumerate(prof.budgets):
            plan.append(RowPlan(j, start, budget, prof.level_of_sorted_row(j),
                                code.local_check(budget)))
            start += budget
        return tuple(plan)
    return code.cached(("plan",), build)


def pseudo_triangular(code: GcCode, sigma: RowPermutation) -> PseudoTriangularH:
    """Cached :func:`triangularize`, keyed by the row order."""
    return code.cached(("pth", sigma.sigma), lambda: triangularize(code, sigma))


def _sorted_values(word: ArrayWord, sigma: RowPermutation) -> np.ndarray:
    return word.grid[list(sigma.inverse)]


def syndromes(word: ArrayWord, pth: PseudoTriangularH) -> SyndromeVector:
    """Syndromes of the row-sorted word against the pseudo-triangular matrix."""
    code = pth.code
    if word.shape != code.shape:
        raise ShapeMismatch(f"word {word.shape} for a {code.shape} code")
    f = code.field
    u0 = code.profile.u0
    v = _sorted_values(word, pth.sigma)
    full = code.local_check(code.profile.u_max).data
    # proj[p, j] = <row p of H(u_max, n; 0), sorted row j>
    prod = f.mul_arr(full[:, None, :], v[None, :, :])
    proj = np.bitwise_xor.reduce(prod, axis=2)
    out = []
    reduced = pth.reduced.data
    for plan in pth.row_plan:
        j = plan.row
        out.extend(int(x) for x in proj[:u0, j])
        for p in range(u0, plan.budget):
            out.append(f.dot(reduced[j], proj[p]))
    return SyndromeVector(tuple(out))


def solve_row(row_index: int, erased_cols: Sequence[int], local_check: Matrix,
              synd: Sequence[int]) -> list[int]:
    """Values of the erased cells of one row from its syndrome group.

    Uses the first ``len(erased_cols)`` rows of the local check and the same
    number of leading syndromes.
    """
    e = len(erased_cols)
    if e == 0:
        return []
    if e > len(synd) or e > local_check.rows:
        raise Singular(f"row {row_index}: {e} erasures but only {len(synd)} syndromes")
    a = Matrix(local_check.field, local_check.data[:e][:, list(erased_cols)])
    try:
        return solve_square(a, list(synd)[:e])
    except Singular:
        raise Singular(f"row {row_index}: local system is singular") from None


def update_syndromes(synd: SyndromeVector, pth: PseudoTriangularH, row_index: int,
                     recovered: Mapping[int, int]) -> SyndromeVector:
    """Fold recovered cells of sorted row ``row_index`` into the pending syndromes.

    ``recovered`` maps column -> value.  Only syndromes of rows above
    ``row_index`` change; their H_0 rows never touch this row.
    """
    code = pth.code
    f = code.field
    u0 = code.profile.u0
    full = code.local_check(code.profile.u_max).data
    cols = list(recovered)
    vals = [recovered[c] for c in cols]
    contrib = [f.dot(full[p, cols], vals) if cols else 0 for p in range(full.shape[0])]
    out = list(synd.values)
    reduced = pth.reduced.data
    for plan in pth.row_plan[:row_index]:
        if plan.row >= reduced.shape[0]:
            break
        coef = int(reduced[plan.row, row_index])
        if coef == 0:
            continue
        for p in range(u0, plan.budget):
            out[plan.start + p] ^= f.mul(coef, contrib[p])
    return SyndromeVector(tuple(out))


def _check_budgets(code: GcCode, pattern: ErasurePattern, sigma: RowPermutation):
    counts = pattern.row_counts
    for j, budget in enumerate(code.profile.budgets):
        e = counts[sigma.inverse[j]]
        if e > budget:
            raise Uncorrectable(
                f"sorted row {j} (row {sigma.inverse[j]}) has {e} erasures, budget {budget}")


def _verify(code: GcCode, grid: np.ndarray):
    if np.any(code.h @ grid.reshape(-1)):
        raise Uncorrectable("decoded array has nonzero syndromes")


def decode(code: GcCode, word: ArrayWord, verify: bool = True) -> ArrayWord:
    """Fill the erasures of ``word``; raises :class:`Uncorrectable`."""
    if word.shape != code.shape:
        raise ShapeMismatch(f"word {word.shape} for a {code.shape} code")
    pattern = word.erasures
    if pattern.weight == 0:
        if verify:
            _verify(code, word.grid)
        return word
    sigma = sort_rows(pattern)
    _check_budgets(code, pattern, sigma)
    pth = pseudo_triangular(code, sigma)
    f = code.field
    order = list(sigma.inverse)
    status, filled, bad_row = kernels.sequential_decode(
        word.grid[order], pattern.as_array()[order],
        code.local_check(code.profile.u_max).data, code.profile.budgets,
        code.profile.u0, pth.reduced.data, f.exp_arr, f.log_arr, f.order)
    if status != 0:
        raise Uncorrectable(f"sorted row {bad_row} could not be solved")
    grid = np.asarray(filled)[list(sigma.sigma)]
    if verify:
        _verify(code, grid)
    return ArrayWord(grid)


@dataclass
class DecodeStep:
    row: int                  # sorted row index
    columns: tuple[int, ...]
    values: tuple[int, ...]
    syndromes_after: SyndromeVector


@dataclass
class DecodeTrace:
    sigma: RowPermutation
    pth: PseudoTriangularH
    initial_syndromes: SyndromeVector
    steps: list[DecodeStep] = dc_field(default_factory=list)


def decode_traced(code: GcCode, word: ArrayWord,
                  verify: bool = True) -> tuple[ArrayWord, DecodeTrace]:
    """Same result as :func:`decode`, built from the public step functions
    and recording every intermediate syndrome vector and row solve."""
    if word.shape != code.shape:
        raise ShapeMismatch(f"word {word.shape} for a {code.shape} code")
    pattern = word.erasures
    sigma = sort_rows(pattern)
    _check_budgets(code, pattern, sigma)
    pth = pseudo_triangular(code, sigma)
    synd = syndromes(word, pth)
    trace = DecodeTrace(sigma, pth, synd)
    rows = [list(r) for r in sigma.apply(word.grid.tolist())]
    mask = sigma.apply(pattern.mask)
    for plan in reversed(pth.row_plan):
        j = plan.row
        cols = [c for c, e in enumerate(mask[j]) if e]
        if not cols:
            continue
        group = synd.values[plan.start:plan.start + plan.budget]
        try:
            vals = solve_row(j, cols, plan.local_check, group)
        except Singular as exc:
            raise Uncorrectable(str(exc)) from None
        for c, x in zip(cols, vals):
            rows[j][c] = x
        synd = update_syndromes(synd, pth, j, dict(zip(cols, vals)))
        trace.steps.append(DecodeStep(j, tuple(cols), tuple(vals), synd))
    grid = np.array(sigma.unapply(rows), dtype=np.int64)
    if verify:
        _verify(code, grid)
    return ArrayWord(grid), trace


def default_parity_placement(code: GcCode) -> ErasurePattern:
    """Parities at the row ends, counts non-increasing from the top row."""
    n = code.n
    return ErasurePattern(tuple(
        tuple(c >= n - budget for c in range(n)) for budget in code.profile.budgets))


def encode(code: GcCode, data: Sequence[int],
           placement: ErasurePattern | None = None) -> ArrayWord:
    """Place ``data`` row-major in the non-parity cells and solve for the parities."""
    if placement is None:
        placement = default_parity_placement(code)
    if placement.shape != code.shape:
        raise InvalidPlacement(f"placement {placement.shape} for a {code.shape} code")
    if placement.weight != code.r or not correctable_by_theorem(placement, code):
        raise InvalidPlacement(
            f"placement with row counts {placement.row_counts} does not fit the budgets "
            f"{code.profile.u_vector} with exactly {code.r} parities")
    data = [int(x) for x in data]
    if len(data) != code.k:
        raise ValueError(f"expected {code.k} data symbols, got {len(data)}")
    if any(not 0 <= x < code.field.size for x in data):
        raise ValueError(f"data symbol outside GF(2^{code.field.b})")
    grid = np.zeros(code.shape, dtype=np.int64)
    grid[~placement.as_array()] = data
    return decode(code, ArrayWord(grid, placement), verify=False)
