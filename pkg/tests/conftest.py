from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from gccodes import ArrayWord, ErasurePattern, build_code, encode, field_new
from gccodes.textio import parse_array

GOLDEN = Path(__file__).parent / "golden"


def load_array(name: str, field, shape):
    values, pattern = parse_array((GOLDEN / name).read_text(), field, shape)
    return ArrayWord(values, pattern)


@pytest.fixture(scope="session")
def gf8():
    return field_new(3)


@pytest.fixture(scope="session")
def code_1224(gf8):
    """C(5; (1,2,2,4)) over GF(8): the worked decoding example."""
    return build_code(5, [1, 2, 2, 4], gf8)


@pytest.fixture
def received(code_1224):
    return load_array("worked_received.txt", code_1224.field, code_1224.shape)


@pytest.fixture
def decoded(code_1224):
    return load_array("worked_decoded.txt", code_1224.field, code_1224.shape)


def powers(field, tokens: str) -> list[int]:
    return [field.parse(t) for t in tokens.split()]


def random_correctable(rng, code, full: bool = False) -> ErasurePattern:
    """Random pattern meeting the sorted-budget condition; ``full`` uses every budget."""
    m, n = code.shape
    budgets = code.profile.budgets
    counts = budgets if full else [int(rng.integers(0, b + 1)) for b in budgets]
    rows = rng.permutation(m)
    mask = np.zeros((m, n), dtype=bool)
    for row, e in zip(rows, counts):
        mask[row, rng.choice(n, size=e, replace=False)] = True
    return ErasurePattern.from_array(mask)


def random_codeword(rng, code):
    return encode(code, rng.integers(0, code.field.size, code.k))
