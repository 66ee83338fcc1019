"""Acceptance suite: one PASS/FAIL line per criterion, then the assertion.

Run with ``pytest tests/test_acceptance.py -v`` to see the report lines.
"""

from __future__ import annotations

import itertools
import time

import numpy as np
import pytest
from conftest import GOLDEN, powers, random_codeword, random_correctable

from gccodes import (Matrix, build_code, decode, decode_traced, encode, field_new,
                     min_distance_formula, rank)
from gccodes.codec import identity_permutation, pseudo_triangular
from gccodes.oracle import brute_solve, exhaustive_capability, min_distance_search, witness_codeword
from gccodes.textio import parse_array


@pytest.fixture
def report(capsys):
    def emit(number: int, title: str, ok: bool, detail: str = ""):
        with capsys.disabled():
            tail = f" ({detail})" if detail else ""
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}{tail}")
        return ok
    return emit


def fmt(field, values):
    return [field.format(x) for x in values]


def test_golden_decode(report, code_1224, received, decoded):
    f = code_1224.field
    _, trace = decode_traced(code_1224, received)
    decode(code_1224, received)                       # warm the factor cache
    runs = 200
    start = time.perf_counter()
    for _ in range(runs):
        out = decode(code_1224, received)
    per_call = (time.perf_counter() - start) / runs
    checks = {
        "sigma": trace.sigma.sigma == (1, 0, 2, 3),
        "reduced": trace.pth.reduced.to_powers()
        == [["1", "1", "1", "1"], ["0", "1", "a^6", "a"], ["0", "0", "1", "a^3"]],
        "syndromes": fmt(f, trace.initial_syndromes) == "a^6 a^3 a^2 a^3 a 1 a^3 a^6 a^5".split(),
        "solves": [fmt(f, s.values) for s in trace.steps]
        == [["a^5"], ["a^5", "a^2"], ["a^5", "a^6"], ["0", "a^3", "1", "a^5"]],
        "output": out == decoded and np.array_equal(out.grid, decoded.grid),
        "runtime": per_call < 1e-3,
    }
    bad = [k for k, v in checks.items() if not v]
    ok = report(1, "golden decode", not bad,
                f"{per_call * 1e3:.3f} ms per decode" + (f"; failed: {bad}" if bad else ""))
    assert ok


def test_golden_encode(report, code_1224, decoded):
    f = code_1224.field
    data = powers(f, (GOLDEN / "worked_data.txt").read_text().replace(",", " "))
    word = encode(code_1224, data)
    reduced = pseudo_triangular(code_1224, identity_permutation(4)).reduced.to_powers()
    ok = report(2, "golden encode",
                word == decoded and reduced == [["1", "1", "1", "1"], ["0", "1", "a^2", "a^3"],
                                                ["0", "0", "1", "a^3"]])
    assert ok


GOLDEN_MATRICES = {
    "h_1133": [1, 1, 3, 3], "h_2233": [2, 2, 3, 3], "h_2244": [2, 2, 4, 4],
    "h_1123": [1, 1, 2, 3], "h_1223": [1, 2, 2, 3],
}


def test_golden_matrices(report, gf8):
    mismatched = []
    for name, u in GOLDEN_MATRICES.items():
        code = build_code(5, u, gf8)
        text = (GOLDEN / f"{name}.txt").read_text()
        values, _ = parse_array(text, gf8, code.h.data.shape)
        if code.h.to_powers() != Matrix(gf8, values).to_powers():
            mismatched.append(name)
    ok = report(3, "golden parity-check matrices", not mismatched,
                f"{len(GOLDEN_MATRICES)} matrices" + (f"; mismatched: {mismatched}" if mismatched else ""))
    assert ok


def small_profiles(n_max: int, m_max: int):
    """Every non-decreasing u vector with 1 <= u_i <= n-1 and m <= min(m_max, n) rows."""
    for n in range(2, n_max + 1):
        for m in range(1, min(m_max, n) + 1):
            for u in itertools.combinations_with_replacement(range(1, n), m):
                yield n, list(u)


def test_distance_formula_sweep(report, gf8):
    start = time.perf_counter()
    checked, failures = 0, []
    for n, u in small_profiles(6, 4):
        code = build_code(n, u, gf8)
        d = min_distance_formula(code)
        if d > 6:
            continue
        checked += 1
        if min_distance_search(code, d) != d:
            failures.append((n, u, "search"))
        prof = code.profile
        for level in range(prof.t):
            claimed = (prof.s_hat(level + 1) + 1) * (prof.u(level) + 1)
            try:
                word = witness_codeword(code, level)
            except RuntimeError:
                failures.append((n, u, level))
                continue
            if int(np.count_nonzero(word.grid)) != claimed or np.any(code.h @ word.flat()):
                failures.append((n, u, level))
    elapsed = time.perf_counter() - start
    ok = report(4, "distance formula and witnesses", not failures and elapsed < 60 and checked > 0,
                f"{checked} profiles in {elapsed:.2f} s, {len(failures)} failures")
    assert ok


def test_exhaustive_capability(report, gf8):
    start = time.perf_counter()
    lines = []
    failures = 0
    for n, u in [(5, [1, 1, 2, 2]), (4, [1, 3])]:
        table = exhaustive_capability(build_code(n, u, gf8))
        covered = table.count(theorem=True)
        good = table.count(theorem=True, oracle=True, decoder="ok")
        failures += len(table.counterexamples) + (covered - good)
        lines.append(f"C({n};{tuple(u)}): {table.patterns} patterns, {covered} within budgets")
    elapsed = time.perf_counter() - start
    ok = report(5, "exhaustive budget-condition decoding", failures == 0 and elapsed < 120,
                "; ".join(lines) + f"; {failures} failures in {elapsed:.1f} s")
    assert ok


ROUNDTRIP_PROFILES = [
    (3, 5, [1, 2, 2, 4]),
    (3, 7, [1, 1, 2, 3, 6]),
    (4, 9, [2, 2, 3, 5]),
    (4, 15, [1, 1, 1, 4, 4, 7]),
    (8, 20, [1, 2, 2, 3, 5, 8, 8, 13]),
    (8, 12, [3]),
]


def field_axioms_hold(b: int) -> bool:
    f = field_new(b)
    elems = range(f.size)
    for x in elems:
        if f.mul(x, 1) != x or f.add(x, 0) != x or f.add(x, x) != 0:
            return False
        if x and f.mul(x, f.inv(x)) != 1:
            return False
    for x, y in itertools.product(elems, repeat=2):
        if f.mul(x, y) != f.mul(y, x) or f.add(x, y) != f.add(y, x):
            return False
    for x, y, z in itertools.product(elems, repeat=3):
        if f.mul(f.mul(x, y), z) != f.mul(x, f.mul(y, z)):
            return False
        if f.mul(x, f.add(y, z)) != f.add(f.mul(x, y), f.mul(x, z)):
            return False
    return True


def test_property_suite(report):
    rng = np.random.default_rng(2024)
    per_profile = 1700
    encode_bad = roundtrip_bad = 0
    pairs = 0
    for b, n, u in ROUNDTRIP_PROFILES:
        code = build_code(n, u, field_new(b))
        for _ in range(per_profile):
            word = random_codeword(rng, code)
            if np.any(code.h @ word.flat()):
                encode_bad += 1
            received = word.erase(random_correctable(rng, code, full=bool(rng.integers(2))))
            if decode(code, received) != word:
                roundtrip_bad += 1
            pairs += 1

    gf8 = field_new(3)
    rank_bad, swept = [], 0
    for n, u in small_profiles(7, 7):
        code = build_code(n, u, gf8)
        swept += 1
        if rank(code.h) != sum(u):
            rank_bad.append((n, u))

    axioms = {b: field_axioms_hold(b) for b in (3, 4)}
    parts = {
        "a": encode_bad == 0,
        "b": roundtrip_bad == 0 and pairs >= 10_000,
        "c": not rank_bad,
        "d": all(axioms.values()),
    }
    ok = report(6, "property suite", all(parts.values()),
                f"{pairs} roundtrips over {len(ROUNDTRIP_PROFILES)} profiles, "
                f"{swept} b=3 profiles ranked, parts {parts}")
    assert ok


def test_decode_faster_than_brute_force(report):
    f = field_new(8)
    code = build_code(32, [(8, 2), (4, 4), (2, 8), (2, 16)], f)
    assert code.shape == (16, 32)
    rng = np.random.default_rng(5)
    words = [random_codeword(rng, code) for _ in range(4)]
    # distinct full-budget patterns so every decode sees a fresh row order
    received = [words[i % 4].erase(random_correctable(rng, code, full=True)) for i in range(60)]
    decode(code, received[0])
    brute_solve(code, received[0])

    def best_of(fn, repeats=3):
        times = []
        for _ in range(repeats):
            # drop factored matrices so each repeat pays for triangularization
            for key in [k for k in code._cache if k[0] == "pth"]:
                del code._cache[key]
            start = time.perf_counter()
            for x in received:
                fn(x)
            times.append(time.perf_counter() - start)
        return min(times) / len(received)

    t_decode = best_of(lambda x: decode(code, x))
    t_brute = best_of(lambda x: brute_solve(code, x))
    outputs_agree = all(decode(code, x) == brute_solve(code, x).fill(x) for x in received[:10])
    ratio = t_brute / t_decode
    ok = report(7, "decode vs brute-force solve on 16x32 over GF(256)", ratio > 1 and outputs_agree,
                f"decode {t_decode * 1e3:.3f} ms, brute {t_brute * 1e3:.3f} ms, speedup {ratio:.2f}x")
    assert ok
