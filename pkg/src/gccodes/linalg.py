"""Dense matrices over GF(2^b) and the Vandermonde building blocks of the codes."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from ._backend import kernels
from .errors import BadDimensions, FieldMismatch, RankDeficient, Singular
from .galois import FieldSpec


class Matrix:
    """Immutable rows x cols matrix of field elements (int64 storage)."""

    __slots__ = ("field", "data")

    def __init__(self, field: FieldSpec, data):
        arr = np.array(data, dtype=np.int64, ndmin=2)
        if arr.ndim != 2:
            raise BadDimensions(f"expected a 2-D grid, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= field.size):
            raise ValueError(f"entries outside GF(2^{field.b})")
        arr.setflags(write=False)
        self.field = field
        self.data = arr

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: FieldSpec, size: int) -> "Matrix":
        return cls(field, np.eye(size, dtype=np.int64))

    @classmethod
    def from_powers(cls, field: FieldSpec, rows: Sequence[Sequence]) -> "Matrix":
        """Build from rows of text tokens (``"a^3"``, ``"1"``, ``"0"``) or ints."""
        return cls(field, [[field.parse(x) if isinstance(x, str) else x for x in row]
                           for row in rows])

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def __getitem__(self, idx):
        out = self.data[idx]
        return int(out) if np.ndim(out) == 0 else out

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and bool(np.array_equal(self.data, other.data)))

    def __hash__(self):
        return hash((self.field, self.shape, self.data.tobytes()))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over GF(2^{self.field.b}))"

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def to_powers(self) -> list[list[str]]:
        fmt = self.field.format
        return [[fmt(x) for x in row] for row in self.data.tolist()]

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatch("matrices live in different fields")

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            if self.cols != other.rows:
                raise BadDimensions(f"cannot multiply {self.shape} by {other.shape}")
            out = np.zeros((self.rows, other.cols), dtype=np.int64)
            for k in range(self.cols):
                out ^= self.field.mul_arr(self.data[:, k:k + 1], other.data[k:k + 1, :])
            return Matrix(self.field, out)
        vec = np.asarray(other, dtype=np.int64)
        if vec.shape != (self.cols,):
            raise BadDimensions(f"vector of length {vec.shape} for {self.cols} columns")
        f = self.field
        return kernels.matvec(self.data, vec, f.exp_arr, f.log_arr, f.order)

    def scale(self, c: int) -> "Matrix":
        return Matrix(self.field, self.field.scale_arr(c, self.data))

    def take_columns(self, cols: Iterable[int]) -> "Matrix":
        return Matrix(self.field, self.data[:, list(cols)])

    def take_rows(self, rows: Iterable[int]) -> "Matrix":
        return Matrix(self.field, self.data[list(rows), :])

    def vstack(self, *others: "Matrix") -> "Matrix":
        for o in others:
            self._check(o)
        return Matrix(self.field, np.vstack([self.data] + [o.data for o in others]))


def vandermonde_h(field: FieldSpec, u: int, n: int, ell: int) -> Matrix:
    """u x n matrix whose row r, column c is alpha^((n-1-c)(ell+r))."""
    if u < 1 or n < 1:
        raise BadDimensions(f"need u >= 1 and n >= 1, got u={u}, n={n}")
    if n > field.order:
        raise BadDimensions(f"n={n} exceeds the multiplicative order {field.order}")
    r = np.arange(u).reshape(-1, 1)
    c = np.arange(n).reshape(1, -1)
    expo = ((n - 1 - c) * (ell + r)) % field.order
    return Matrix(field, field.exp_arr[expo])


def vandermonde_hhat(field: FieldSpec, s: int, m: int, ell: int) -> Matrix:
    """s x m matrix whose row r, column c is alpha^(-c(ell+r))."""
    if s < 1 or m < 1:
        raise BadDimensions(f"need s >= 1 and m >= 1, got s={s}, m={m}")
    if m > field.order:
        raise BadDimensions(f"m={m} exceeds the multiplicative order {field.order}")
    r = np.arange(s).reshape(-1, 1)
    c = np.arange(m).reshape(1, -1)
    expo = (-c * (ell + r)) % field.order
    return Matrix(field, field.exp_arr[expo])


def kronecker(a: Matrix, b: Matrix) -> Matrix:
    a._check(b)
    f = a.field
    blocks = f.mul_arr(a.data[:, None, :, None], b.data[None, :, None, :])
    return Matrix(f, blocks.reshape(a.rows * b.rows, a.cols * b.cols))


def row_reduce_to_upper_unit(m: Matrix) -> tuple[Matrix, Matrix]:
    """Reduce a k x c matrix (k <= c) to upper triangular with unit diagonal.

    Returns ``(reduced, transform)`` with ``transform @ m == reduced``.  Only
    the leading k columns are pivoted; entries right of the leading square
    are whatever the row operations leave (the gamma coefficients).
    """
    if m.rows > m.cols:
        raise BadDimensions(f"need rows <= cols, got {m.shape}")
    f = m.field
    if m.rows == 0:
        return m, Matrix.zeros(f, 0, 0)
    status, reduced, transform = kernels.upper_unit(m.data, f.exp_arr, f.log_arr, f.order)
    if status != 0:
        raise RankDeficient("leading square is singular")
    return Matrix(f, reduced), Matrix(f, transform)


def solve_square(a: Matrix, rhs) -> list[int]:
    if a.rows != a.cols:
        raise BadDimensions(f"matrix is {a.shape}, not square")
    rhs = np.asarray(rhs, dtype=np.int64)
    if rhs.shape != (a.rows,):
        raise BadDimensions(f"right-hand side has shape {rhs.shape}")
    f = a.field
    status, x = kernels.solve(a.data, rhs, f.exp_arr, f.log_arr, f.order)
    if status != 0:
        raise Singular("matrix is singular")
    return x.tolist()


def rank(m: Matrix) -> int:
    f = m.field
    if m.rows == 0 or m.cols == 0:
        return 0
    return kernels.rank(m.data, f.exp_arr, f.log_arr, f.order)
