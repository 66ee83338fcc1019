"""Table-driven arithmetic in GF(2^b), 3 <= b <= 16.

Elements are plain ``int`` values in polynomial-basis representation; the
generator ``alpha`` is the class of ``x`` (integer 2).  :class:`FieldElement`
is a thin operator-overloading wrapper for interactive use.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from .errors import BadDegree, DivideByZero, NonPrimitivePolynomial, ParseError

MIN_BITS = 3
MAX_BITS = 16

# one pinned primitive polynomial per width, bit i = coefficient of x^i
DEFAULT_POLYS = {
    3: 0xB,        # x^3 + x + 1
    4: 0x13,       # x^4 + x + 1
    5: 0x25,       # x^5 + x^2 + 1
    6: 0x43,       # x^6 + x + 1
    7: 0x89,       # x^7 + x^3 + 1
    8: 0x11D,      # x^8 + x^4 + x^3 + x^2 + 1
    9: 0x211,      # x^9 + x^4 + 1
    10: 0x409,     # x^10 + x^3 + 1
    11: 0x805,     # x^11 + x^2 + 1
    12: 0x1053,    # x^12 + x^6 + x^4 + x + 1
    13: 0x201B,    # x^13 + x^4 + x^3 + x + 1
    14: 0x4443,    # x^14 + x^10 + x^6 + x + 1
    15: 0x8003,    # x^15 + x + 1
    16: 0x1100B,   # x^16 + x^12 + x^3 + x + 1
}

_POWER_RE = re.compile(r"^(?:a|α)(?:\^\{?(-?\d+)\}?)?$")


@dataclass(frozen=True)
class FieldSpec:
    """GF(2^b) defined by a primitive polynomial ``poly`` of degree ``b``."""

    b: int
    poly: int
    exp: list = dc_field(init=False, repr=False, compare=False)
    log: list = dc_field(init=False, repr=False, compare=False)
    exp_arr: np.ndarray = dc_field(init=False, repr=False, compare=False)
    log_arr: np.ndarray = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        b, poly = self.b, self.poly
        if not MIN_BITS <= b <= MAX_BITS:
            raise BadDegree(f"bit width must be in {MIN_BITS}..{MAX_BITS}, got {b}")
        if poly.bit_length() != b + 1:
            raise BadDegree(f"polynomial {poly:#x} does not have degree {b}")
        size = 1 << b
        order = size - 1
        exp = [0] * (2 * order)
        log = [-1] * size
        x = 1
        for i in range(order):
            if log[x] != -1:
                raise NonPrimitivePolynomial(
                    f"polynomial {poly:#x}: x has order {i} < {order}")
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & size:
                x ^= poly
            if x == 0:
                raise NonPrimitivePolynomial(f"polynomial {poly:#x} is divisible by x")
        if x != 1:
            raise NonPrimitivePolynomial(f"polynomial {poly:#x}: x does not generate the field")
        exp[order:] = exp[:order]
        set_ = object.__setattr__
        set_(self, "exp", exp)
        set_(self, "log", log)
        set_(self, "exp_arr", np.array(exp, dtype=np.int64))
        set_(self, "log_arr", np.array(log, dtype=np.int64))
        self.exp_arr.setflags(write=False)
        self.log_arr.setflags(write=False)

    @property
    def size(self) -> int:
        return 1 << self.b

    @property
    def order(self) -> int:
        """Multiplicative order of alpha, 2^b - 1."""
        return (1 << self.b) - 1

    @property
    def alpha(self) -> int:
        return 2

    def __contains__(self, a) -> bool:
        return isinstance(a, (int, np.integer)) and 0 <= a < self.size

    # scalar arithmetic

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    sub = add

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivideByZero("inverse of zero")
        return self.exp[(self.order - self.log[a]) % self.order]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise DivideByZero("division by zero")
        if a == 0:
            return 0
        return self.exp[(self.log[a] - self.log[b]) % self.order]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivideByZero("zero to a negative power")
            return 1 if e == 0 else 0
        return self.exp[(self.log[a] * e) % self.order]

    def alpha_pow(self, k: int) -> int:
        """alpha^k for any signed k."""
        return self.exp[k % self.order]

    def logarithm(self, a: int) -> int:
        """k in 0..2^b-2 with alpha^k == a."""
        if a == 0:
            raise DivideByZero("logarithm of zero")
        return self.log[a]

    # vectorised helpers (numpy int64 arrays)

    def mul_arr(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp_arr[self.log_arr[a] + self.log_arr[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def scale_arr(self, c: int, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if c == 0:
            return np.zeros_like(a)
        out = self.exp_arr[self.log_arr[a] + self.log[c]]
        return np.where(a == 0, 0, out)

    def dot(self, a, b) -> int:
        """Inner product of two equal-length vectors."""
        prod = self.mul_arr(a, b)
        return int(np.bitwise_xor.reduce(prod)) if prod.size else 0

    # text forms

    def parse(self, token: str) -> int:
        """Parse ``0``, ``1``, ``a``, ``a^k`` (also ``α``) or a decimal/hex integer."""
        tok = token.strip()
        m = _POWER_RE.match(tok)
        if m:
            k = int(m.group(1)) if m.group(1) is not None else 1
            return self.alpha_pow(k)
        try:
            value = int(tok, 0)
        except ValueError:
            raise ParseError(f"not a field element: {token!r}") from None
        if not 0 <= value < self.size:
            raise ParseError(f"value {value} outside GF(2^{self.b})")
        return value

    def format(self, a: int, notation: str = "power") -> str:
        if notation == "int":
            return str(int(a))
        if notation != "power":
            raise ValueError(f"unknown notation {notation!r}")
        if a == 0:
            return "0"
        k = self.log[a]
        if k == 0:
            return "1"
        return "a" if k == 1 else f"a^{k}"

    def element(self, value) -> "FieldElement":
        if isinstance(value, str):
            value = self.parse(value)
        return FieldElement(self, int(value))


@lru_cache(maxsize=None)
def field_new(b: int, poly: int | None = None) -> FieldSpec:
    """Build (and cache) GF(2^b); ``poly`` defaults to the pinned primitive polynomial."""
    if poly is None:
        if b not in DEFAULT_POLYS:
            raise BadDegree(f"bit width must be in {MIN_BITS}..{MAX_BITS}, got {b}")
        poly = DEFAULT_POLYS[b]
    return FieldSpec(b, poly)


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.size:
            raise ValueError(f"{self.value} is not in GF(2^{self.field.b})")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        if isinstance(other, int) and other in self.field:
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.value ^ o)

    __radd__ = __sub__ = __rsub__ = __add__

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(self.value, o))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __int__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field.b, self.field.poly, self.value))

    def __repr__(self):
        return self.field.format(self.value)


def gf_add(a: int, b: int) -> int:
    return a ^ b


def gf_mul(field: FieldSpec, a: int, b: int) -> int:
    return field.mul(a, b)


def gf_inv(field: FieldSpec, a: int) -> int:
    return field.inv(a)


def gf_pow(field: FieldSpec, a: int, e: int) -> int:
    return field.pow(a, e)
