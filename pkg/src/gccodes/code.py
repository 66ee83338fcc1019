"""Code definition: level profiles, the parity-check matrix, distance and capability."""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache
from itertools import groupby
from typing import Iterable, Sequence

import numpy as np

from .errors import (LengthExceedsField, NotNonDecreasing, OutOfRange,
                     ProfileTooTall, ShapeMismatch)
from .galois import FieldSpec, field_new
from .linalg import Matrix, kronecker, vandermonde_h, vandermonde_hhat


@dataclass(frozen=True)
class LevelProfile:
    """Levels ``(s_i, u_i)``: s_i rows each tolerating u_i erasures, u_i increasing."""

    levels: tuple[tuple[int, int], ...]

    def __post_init__(self):
        levels = tuple((int(s), int(u)) for s, u in self.levels)
        object.__setattr__(self, "levels", levels)
        if not levels:
            raise OutOfRange("a profile needs at least one level")
        for s, u in levels:
            if s < 1:
                raise OutOfRange(f"row multiplicity must be >= 1, got {s}")
            if u < 1:
                raise OutOfRange(f"erasure budget must be >= 1, got {u}")
        budgets = [u for _, u in levels]
        if any(a >= b for a, b in zip(budgets, budgets[1:])):
            raise NotNonDecreasing(f"level budgets must strictly increase: {budgets}")

    @classmethod
    def from_levels(cls, levels: Iterable[Sequence[int]]) -> "LevelProfile":
        """Accept ``(s, u)`` pairs; adjacent pairs with equal u are merged."""
        merged: list[list[int]] = []
        for s, u in levels:
            if merged and merged[-1][1] == u:
                merged[-1][0] += s
            else:
                merged.append([s, u])
        return cls(tuple((s, u) for s, u in merged))

    @property
    def t(self) -> int:
        return len(self.levels)

    @property
    def m(self) -> int:
        return sum(s for s, _ in self.levels)

    @property
    def r(self) -> int:
        """Total number of parity symbols."""
        return sum(s * u for s, u in self.levels)

    @property
    def u0(self) -> int:
        return self.levels[0][1]

    @property
    def u_max(self) -> int:
        return self.levels[-1][1]

    def s(self, i: int) -> int:
        return self.levels[i][0]

    def u(self, i: int) -> int:
        return self.levels[i][1]

    @cached_property
    def _suffix_rows(self) -> tuple[int, ...]:
        out = [0]
        for s, _ in reversed(self.levels):
            out.append(out[-1] + s)
        return tuple(reversed(out))

    def s_hat(self, i: int) -> int:
        """Rows in levels i..t-1; s_hat(0) == m and s_hat(t) == 0."""
        return self._suffix_rows[i]

    @property
    def u_vector(self) -> tuple[int, ...]:
        return tuple(u for s, u in self.levels for _ in range(s))

    @property
    def budgets(self) -> tuple[int, ...]:
        """Per-row budgets in descending order (the sorted-row view)."""
        return tuple(reversed(self.u_vector))

    def level_of_sorted_row(self, j: int) -> int:
        """Level i whose band serves row j of the erasure-sorted array."""
        for i in range(self.t - 1, -1, -1):
            if j < self.s_hat(i):
                return i
        raise IndexError(j)


def profile_from_u_vector(u: Sequence[int], n: int) -> LevelProfile:
    u = [int(x) for x in u]
    if not u:
        raise OutOfRange("empty u vector")
    for x in u:
        if not 1 <= x <= n - 1:
            raise OutOfRange(f"each u_i must be in 1..{n - 1}, got {x}")
    if any(a > b for a, b in zip(u, u[1:])):
        raise NotNonDecreasing(f"u vector must be non-decreasing: {u}")
    return LevelProfile(tuple((len(list(g)), k) for k, g in groupby(u)))


def as_profile(spec, n: int) -> LevelProfile:
    """Normalise a LevelProfile, a u-vector or a list of (s, u) pairs."""
    if isinstance(spec, LevelProfile):
        prof = spec
    elif spec and isinstance(spec[0], (tuple, list)):
        prof = LevelProfile.from_levels(spec)
    else:
        return profile_from_u_vector(spec, n)
    if prof.u_max > n - 1:
        raise OutOfRange(f"largest budget {prof.u_max} exceeds n-1 = {n - 1}")
    return prof


@dataclass(frozen=True, eq=False)
class GcCode:
    """The [mn, mn - r] code C(n; u) with its r x mn parity-check matrix."""

    n: int
    field: FieldSpec
    profile: LevelProfile
    h: Matrix
    _cache: dict = dc_field(default_factory=dict, repr=False)
    _lock: threading.RLock = dc_field(default_factory=threading.RLock, repr=False)

    @property
    def m(self) -> int:
        return self.profile.m

    @property
    def r(self) -> int:
        return self.profile.r

    @property
    def k(self) -> int:
        """Code dimension (number of data symbols)."""
        return self.m * self.n - self.r

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m, self.n)

    def __eq__(self, other):
        if not isinstance(other, GcCode):
            return NotImplemented
        return (self.n, self.field, self.profile) == (other.n, other.field, other.profile)

    def __hash__(self):
        return hash((self.n, self.field, self.profile))

    def cached(self, key, build):
        """One-time insertion cache for derived objects (thread-safe)."""
        try:
            return self._cache[key]
        except KeyError:
            pass
        with self._lock:
            if key not in self._cache:
                self._cache[key] = build()
            return self._cache[key]

    def local_check(self, budget: int) -> Matrix:
        """H(budget, n; 0): the row code correcting ``budget`` erasures."""
        return self.cached(("local", budget),
                           lambda: vandermonde_h(self.field, budget, self.n, 0))

    def to_config(self) -> "CodeConfig":
        return CodeConfig(self.n, self.field.b, self.field.poly, self.profile.u_vector)


def build_code(n: int, profile, field: FieldSpec | None = None,
               precompute: bool = True) -> GcCode:
    """Assemble the parity-check matrix.

    Top block I_m (x) H(u_0, n; 0), then for levels t-1 down to 1 the band
    Hhat(s_i, m; s_hat(i+1)) (x) H(u_i - u_0, n; u_0).
    """
    field = field or field_new(3)
    profile = as_profile(profile, n)
    m = profile.m
    if n > field.order:
        raise LengthExceedsField(f"n={n} exceeds 2^{field.b} - 1 = {field.order}")
    if m > n:
        raise ProfileTooTall(f"m={m} rows exceeds the row length n={n}")
    u0 = profile.u0
    blocks = [kronecker(Matrix.identity(field, m), vandermonde_h(field, u0, n, 0))]
    for i in range(profile.t - 1, 0, -1):
        coef = vandermonde_hhat(field, profile.s(i), m, profile.s_hat(i + 1))
        blocks.append(kronecker(coef, vandermonde_h(field, profile.u(i) - u0, n, u0)))
    h = blocks[0].vstack(*blocks[1:])
    code = GcCode(n, field, profile, h)
    if precompute:
        from .codec import identity_permutation, pseudo_triangular
        pseudo_triangular(code, identity_permutation(m))
    return code


def min_distance_formula(code_or_profile) -> int:
    """min over levels of (s_hat(i+1) + 1)(u_i + 1)."""
    p = code_or_profile.profile if isinstance(code_or_profile, GcCode) else code_or_profile
    return min((p.s_hat(i + 1) + 1) * (p.u(i) + 1) for i in range(p.t))


@dataclass(frozen=True)
class ErasurePattern:
    """m x n boolean grid, True marks an erased cell."""

    mask: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        mask = tuple(tuple(bool(x) for x in row) for row in self.mask)
        if mask and len({len(row) for row in mask}) != 1:
            raise ShapeMismatch("ragged erasure mask")
        object.__setattr__(self, "mask", mask)

    @classmethod
    def empty(cls, m: int, n: int) -> "ErasurePattern":
        return _empty_pattern(cls, m, n)

    @classmethod
    def from_cells(cls, m: int, n: int, cells: Iterable) -> "ErasurePattern":
        """Cells as flat row-major indices or (row, col) pairs."""
        grid = [[False] * n for _ in range(m)]
        for cell in cells:
            i, j = divmod(cell, n) if isinstance(cell, (int, np.integer)) else cell
            grid[i][j] = True
        return cls(tuple(tuple(r) for r in grid))

    @classmethod
    def from_array(cls, arr) -> "ErasurePattern":
        return cls(tuple(tuple(bool(x) for x in row) for row in np.asarray(arr).tolist()))

    @property
    def m(self) -> int:
        return len(self.mask)

    @property
    def n(self) -> int:
        return len(self.mask[0]) if self.mask else 0

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m, self.n)

    @cached_property
    def row_counts(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.mask)

    @property
    def weight(self) -> int:
        return sum(self.row_counts)

    def cells(self) -> list[int]:
        """Erased cells as flat row-major indices."""
        n = self.n
        return [i * n + j for i, row in enumerate(self.mask) for j, e in enumerate(row) if e]

    def as_array(self) -> np.ndarray:
        return self._array.copy()

    @cached_property
    def _array(self) -> np.ndarray:
        return np.array(self.mask, dtype=bool).reshape(self.m, self.n)

    def permute_rows(self, order: Sequence[int]) -> "ErasurePattern":
        """Pattern whose row j is row ``order[j]`` of this one."""
        return ErasurePattern(tuple(self.mask[i] for i in order))


@lru_cache(maxsize=64)
def _empty_pattern(cls, m: int, n: int) -> ErasurePattern:
    return cls(tuple((False,) * n for _ in range(m)))


def correctable_by_theorem(pattern: ErasurePattern, profile, n: int | None = None) -> bool:
    """True iff sorted row counts fit under the descending budget vector."""
    if isinstance(profile, GcCode):
        n = profile.n
        profile = profile.profile
    if pattern.m != profile.m or (n is not None and pattern.n != n):
        raise ShapeMismatch(f"pattern {pattern.shape} does not match {profile.m} x {n}")
    counts = sorted(pattern.row_counts, reverse=True)
    return all(e <= b for e, b in zip(counts, profile.budgets))


@dataclass(frozen=True)
class CodeConfig:
    """Serialisable code description: {n, b, poly, u}."""

    n: int
    b: int
    poly: int
    u: tuple[int, ...]

    KEYS = ("n", "b", "poly", "u")

    def to_json(self) -> str:
        doc = {"n": self.n, "b": self.b, "poly": f"0x{self.poly:X}", "u": list(self.u)}
        return json.dumps(doc) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "CodeConfig":
        doc = json.loads(text)
        if not isinstance(doc, dict):
            raise ValueError("config must be a JSON object")
        unknown = set(doc) - set(cls.KEYS)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        for key in ("n", "b", "u"):
            if key not in doc:
                raise ValueError(f"config is missing {key!r}")
        b = int(doc["b"])
        poly = doc.get("poly")
        if poly is None:
            poly = field_new(b).poly
        elif isinstance(poly, str):
            poly = int(poly, 16)
        u = doc["u"]
        if not isinstance(u, list) or not all(isinstance(x, int) for x in u):
            raise ValueError("u must be a list of integers")
        return cls(int(doc["n"]), b, int(poly), tuple(u))

    def field(self) -> FieldSpec:
        return field_new(self.b, self.poly)

    def build(self, precompute: bool = True) -> GcCode:
        return build_code(self.n, list(self.u), self.field(), precompute=precompute)
