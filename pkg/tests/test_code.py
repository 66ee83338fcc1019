from __future__ import annotations

import threading

import numpy as np
import pytest
from conftest import GOLDEN

from gccodes import (CodeConfig, ErasurePattern, LevelProfile, build_code, correctable_by_theorem,
                     field_new, min_distance_formula, profile_from_u_vector, rank)
from gccodes.codec import RowPermutation, pseudo_triangular
from gccodes.errors import (LengthExceedsField, NotNonDecreasing, OutOfRange, ProfileTooTall,
                            ShapeMismatch)
from gccodes.textio import parse_array


@pytest.mark.parametrize("name, u", [
    ("h_1133", [1, 1, 3, 3]),
    ("h_2233", [2, 2, 3, 3]),
    ("h_2244", [2, 2, 4, 4]),
    ("h_1123", [1, 1, 2, 3]),
    ("h_1223", [1, 2, 2, 3]),
])
def test_parity_check_matches_golden(gf8, name, u):
    code = build_code(5, u, gf8)
    golden, erased = parse_array((GOLDEN / f"{name}.txt").read_text(), gf8, code.h.shape)
    assert erased.weight == 0
    assert np.array_equal(code.h.data, golden)


def test_dimensions_of_worked_example(code_1224):
    assert code_1224.h.shape == (9, 20)
    assert (code_1224.r, code_1224.k, code_1224.shape) == (9, 11, (4, 5))


def test_profile_quantities():
    p = profile_from_u_vector([1, 2, 2, 4], 5)
    assert p.levels == ((1, 1), (2, 2), (1, 4))
    assert (p.t, p.m, p.r, p.u0, p.u_max) == (3, 4, 9, 1, 4)
    assert [p.s_hat(i) for i in range(4)] == [4, 3, 1, 0]
    assert p.budgets == (4, 2, 2, 1)
    assert [p.level_of_sorted_row(j) for j in range(4)] == [2, 1, 1, 0]
    assert p.u_vector == (1, 2, 2, 4)


def test_profile_from_pairs_merges_equal_budgets():
    assert LevelProfile.from_levels([(1, 1), (2, 1), (1, 3)]).levels == ((3, 1), (1, 3))


@pytest.mark.parametrize("u, n, err", [
    ([5], 5, OutOfRange),
    ([0, 1], 5, OutOfRange),
    ([], 5, OutOfRange),
    ([2, 1], 5, NotNonDecreasing),
])
def test_profile_validation(u, n, err):
    with pytest.raises(err):
        profile_from_u_vector(u, n)


def test_bad_pairs():
    with pytest.raises(NotNonDecreasing):
        LevelProfile(((1, 3), (1, 2)))
    with pytest.raises(OutOfRange):
        LevelProfile(((0, 1),))


def test_code_size_limits(gf8):
    with pytest.raises(LengthExceedsField):
        build_code(8, [1], gf8)
    with pytest.raises(ProfileTooTall):
        build_code(3, [1, 1, 1, 1], gf8)
    with pytest.raises(OutOfRange):
        build_code(5, [(1, 5)], gf8)


@pytest.mark.parametrize("u, d", [
    ([1, 2, 2, 3], 4),
    ([1, 1, 3, 3], 4),
    ([2, 2, 3, 3], 4),
    ([1, 1, 1, 1], 2),
    ([1, 3], 4),
    ([1, 1, 2, 2], 3),
])
def test_distance_formula(u, d):
    assert min_distance_formula(profile_from_u_vector(u, 5)) == d


def cells(rows):
    return ErasurePattern(tuple(tuple(c == "X" for c in r) for r in rows))


@pytest.mark.parametrize("rows, u, ok", [
    ([".X...", "X..XX", "....X", ".X.X."], [1, 1, 2, 3], True),
    ([".X..X", "X....", ".X...", ".X.XX"], [1, 1, 2, 3], True),
    ([".X...", "X..XX", "....X", "XX.X."], [1, 1, 2, 3], False),
    ([".X...", "XXX..", "...X.", "X.XX."], [1, 1, 3, 3], True),
    (["XXX..", "XXX..", "X....", "XX..."], [1, 1, 3, 3], False),
    (["....X", "....X", "..XXX", "..XXX"], [1, 1, 3, 3], True),
])
def test_sorted_budget_condition(rows, u, ok):
    pattern = cells(rows)
    assert correctable_by_theorem(pattern, profile_from_u_vector(u, 5)) is ok


def test_condition_checks_shape(code_1224):
    with pytest.raises(ShapeMismatch):
        correctable_by_theorem(ErasurePattern.empty(3, 5), code_1224)


def test_erasure_pattern_helpers():
    p = ErasurePattern.from_cells(2, 3, [0, (1, 2)])
    assert p.cells() == [0, 5]
    assert p.row_counts == (1, 1) and p.weight == 2
    assert p.permute_rows([1, 0]).cells() == [2, 3]
    assert ErasurePattern.from_array(p.as_array()) == p
    with pytest.raises(ShapeMismatch):
        ErasurePattern(((True,), (True, False)))


def test_config_roundtrip_is_byte_exact():
    text = '{"n": 5, "b": 3, "poly": "0xB", "u": [1, 2, 2, 4]}\n'
    cfg = CodeConfig.from_json(text)
    assert cfg.to_json() == text
    assert cfg.build() == build_code(5, [1, 2, 2, 4])
    assert cfg.build().to_config() == cfg


def test_config_defaults_and_errors():
    cfg = CodeConfig.from_json('{"u": [1, 3], "b": 8, "n": 10}')
    assert cfg.poly == 0x11D
    assert cfg.to_json() == '{"n": 10, "b": 8, "poly": "0x11D", "u": [1, 3]}\n'
    with pytest.raises(ValueError):
        CodeConfig.from_json('{"n": 5, "b": 3, "u": [1], "extra": 1}')
    with pytest.raises(ValueError):
        CodeConfig.from_json('{"n": 5, "b": 3}')
    with pytest.raises(ValueError):
        CodeConfig.from_json('[1, 2]')


def test_codes_compare_by_definition(gf8):
    a = build_code(5, [1, 2, 2, 4], gf8)
    assert a == build_code(5, [(1, 1), (2, 2), (1, 4)], gf8)
    assert hash(a) == hash(build_code(5, [1, 2, 2, 4], gf8, precompute=False))
    assert a != build_code(5, [1, 2, 2, 3], gf8)


def test_rank_equals_parity_count_gf256():
    f = field_new(8)
    for u in ([1, 1, 2, 3, 5, 8], [2, 4, 4, 6], [3, 3, 3, 3, 3, 9]):
        code = build_code(12, u, f)
        assert rank(code.h) == code.r


def test_cache_builds_once_under_threads(gf8):
    code = build_code(6, [1, 2, 3, 4, 5], gf8, precompute=False)
    sigma = RowPermutation((4, 2, 0, 1, 3))
    seen = []

    def worker():
        seen.append(pseudo_triangular(code, sigma))

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len({id(x) for x in seen}) == 1
