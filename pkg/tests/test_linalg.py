from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gccodes import Matrix, field_new, kronecker, rank, vandermonde_h, vandermonde_hhat
from gccodes.errors import BadDimensions, FieldMismatch, RankDeficient, Singular
from gccodes.linalg import row_reduce_to_upper_unit, solve_square


def P(field, rows):
    return Matrix.from_powers(field, [r.split() for r in rows])


def test_h_block_entries(gf8):
    # row r, column c is alpha^((n-1-c)(ell+r)), built by repeated multiplication
    h = vandermonde_h(gf8, 3, 6, 2)
    for r in range(3):
        for c in range(6):
            want = 1
            for _ in range((6 - 1 - c) * (2 + r)):
                want = gf8.mul(want, 2)
            assert h[r, c] == want


def test_local_checks_as_displayed(gf8):
    assert vandermonde_h(gf8, 2, 5, 1) == P(gf8, ["a^4 a^3 a^2 a 1", "a^8 a^6 a^4 a^2 1"])
    assert vandermonde_h(gf8, 2, 5, 0) == P(gf8, ["1 1 1 1 1", "a^4 a^3 a^2 a 1"])
    assert vandermonde_h(gf8, 2, 5, 2) == P(gf8, ["a^8 a^6 a^4 a^2 1", "a^12 a^9 a^6 a^3 1"])
    assert vandermonde_h(gf8, 3, 5, 1) == P(
        gf8, ["a^4 a^3 a^2 a 1", "a^8 a^6 a^4 a^2 1", "a^12 a^9 a^6 a^3 1"])


def test_global_coefficients_as_displayed(gf8):
    assert vandermonde_hhat(gf8, 2, 4, 0) == P(gf8, ["1 1 1 1", "1 a^-1 a^-2 a^-3"])
    assert vandermonde_hhat(gf8, 3, 4, 0) == P(
        gf8, ["1 1 1 1", "1 a^-1 a^-2 a^-3", "1 a^-2 a^-4 a^-6"])
    assert vandermonde_hhat(gf8, 2, 4, 1) == P(gf8, ["1 a^-1 a^-2 a^-3", "1 a^-2 a^-4 a^-6"])


def test_block_dimension_errors(gf8):
    with pytest.raises(BadDimensions):
        vandermonde_h(gf8, 0, 5, 0)
    with pytest.raises(BadDimensions):
        vandermonde_h(gf8, 1, 8, 0)
    with pytest.raises(BadDimensions):
        vandermonde_hhat(gf8, 1, 0, 0)


@pytest.mark.parametrize("n", range(2, 8))
def test_square_submatrices_of_local_checks_are_invertible(gf8, n):
    for u in range(1, min(4, n) + 1):
        for ell in range(4):
            h = vandermonde_h(gf8, u, n, ell)
            for cols in combinations(range(n), u):
                assert rank(h.take_columns(cols)) == u


def test_kronecker_layout(gf8):
    a = P(gf8, ["1 a", "0 a^2"])
    b = P(gf8, ["a 1 a^3"])
    k = kronecker(a, b)
    assert k.shape == (2, 6)
    assert k.tolist()[0] == b.tolist()[0] + b.scale(2).tolist()[0]
    assert k.tolist()[1] == [0, 0, 0] + b.scale(4).tolist()[0]
    eye = kronecker(Matrix.identity(gf8, 3), Matrix.identity(gf8, 2))
    assert eye == Matrix.identity(gf8, 6)


def test_reduce_permuted_coefficients(gf8):
    m = P(gf8, ["1 1 1 1", "a^6 1 a^5 a^4", "a^5 1 a^3 a"])
    reduced, transform = row_reduce_to_upper_unit(m)
    assert reduced == P(gf8, ["1 1 1 1", "0 1 a^6 a", "0 0 1 a^3"])
    assert transform @ m == reduced
    assert not np.any(np.triu(transform.data, 1))


def test_reduce_two_by_two(gf8):
    reduced, _ = row_reduce_to_upper_unit(P(gf8, ["1 1", "a^-1 a^-3"]))
    assert reduced == P(gf8, ["1 1", "0 1"])


def test_reduce_rank_deficient(gf8):
    with pytest.raises(RankDeficient):
        row_reduce_to_upper_unit(P(gf8, ["1 a 1", "1 a 0"]))
    with pytest.raises(BadDimensions):
        row_reduce_to_upper_unit(P(gf8, ["1", "a"]))


@pytest.mark.parametrize("rows, rhs, expected", [
    (["1 1", "a^3 a"], "a^3 1", "a^5 a^2"),
    (["1 1", "a^4 a"], "a a^6", "a^5 a^6"),
])
def test_small_systems(gf8, rows, rhs, expected):
    x = solve_square(P(gf8, rows), [gf8.parse(t) for t in rhs.split()])
    assert x == [gf8.parse(t) for t in expected.split()]


def test_singular_system(gf8):
    with pytest.raises(Singular):
        solve_square(P(gf8, ["1 a", "a a^2"]), [1, 0])
    with pytest.raises(BadDimensions):
        solve_square(P(gf8, ["1 a"]), [1])


def test_field_mismatch():
    a = Matrix.identity(field_new(3), 2)
    b = Matrix.identity(field_new(4), 2)
    with pytest.raises(FieldMismatch):
        a @ b
    with pytest.raises(FieldMismatch):
        kronecker(a, b)


def test_matrix_is_immutable(gf8):
    m = Matrix.identity(gf8, 2)
    with pytest.raises(ValueError):
        m.data[0, 0] = 5
    with pytest.raises(ValueError):
        Matrix(gf8, [[8]])


def square_matrices(size):
    return st.lists(st.integers(0, 255), min_size=size * size, max_size=size * size)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(lambda k: st.tuples(st.just(k), square_matrices(k),
                                                      st.lists(st.integers(0, 255), min_size=k, max_size=k))))
def test_solve_inverts_product(case):
    k, entries, x = case
    f = field_new(8)
    a = Matrix(f, np.array(entries).reshape(k, k))
    rhs = a @ np.array(x)
    if rank(a) < k:
        with pytest.raises(Singular):
            solve_square(a, rhs)
    else:
        assert solve_square(a, rhs) == x


@settings(max_examples=40, deadline=None)
@given(square_matrices(3), square_matrices(3), square_matrices(3))
def test_product_is_associative(a, b, c):
    f = field_new(8)
    a, b, c = (Matrix(f, np.array(v).reshape(3, 3)) for v in (a, b, c))
    assert (a @ b) @ c == a @ (b @ c)
    v = np.array([1, 2, 3])
    assert np.array_equal((a @ b) @ v, a @ (b @ v))
