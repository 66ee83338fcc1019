"""Compare the compiled and pure-Python kernels, and decode against brute force.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from gccodes import ErasurePattern, build_code, encode, field_new, pseudo_triangular, sort_rows
from gccodes._backend import available
from gccodes.codec import decode
from gccodes.oracle import brute_solve


def full_pattern(rng, code) -> ErasurePattern:
    m, n = code.shape
    mask = np.zeros((m, n), dtype=bool)
    for row, e in zip(rng.permutation(m), code.profile.budgets):
        mask[row, rng.choice(n, size=e, replace=False)] = True
    return ErasurePattern.from_array(mask)


def kernel_cases(rng):
    f = field_new(8)
    tables = (f.exp_arr, f.log_arr, f.order)
    square = rng.integers(0, 256, (48, 48))
    tall = rng.integers(0, 256, (64, 40))
    rhs = rng.integers(0, 256, 64)
    small = build_code(7, [1, 2, 2, 3], field_new(3))
    small_tables = (small.field.exp_arr, small.field.log_arr, small.field.order)

    code = build_code(32, [(8, 2), (4, 4), (2, 8), (2, 16)], f)
    word = encode(code, rng.integers(0, 256, code.k))
    pattern = full_pattern(rng, code)
    sigma = sort_rows(pattern)
    order = list(sigma.inverse)
    pth = pseudo_triangular(code, sigma)
    decode_args = (word.grid[order], pattern.as_array()[order],
                   code.local_check(code.profile.u_max).data, code.profile.budgets,
                   code.profile.u0, pth.reduced.data, *tables)
    return {
        "rank 48x48": lambda k: k.rank(square, *tables),
        "solve 64x40": lambda k: k.solve(tall, rhs, *tables),
        "first_dependent w=4": lambda k: k.first_dependent(small.h.data, 4, *small_tables),
        "sequential_decode 16x32": lambda k: k.sequential_decode(*decode_args),
    }


def per_call(fn, repeat: int) -> float:
    number = max(1, int(0.2 / max(timeit.timeit(fn, number=1), 1e-6)))
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    backends = available()
    names = sorted(backends)

    print(f"{'kernel':<26}" + "".join(f"{n + ' (ms)':>16}" for n in names) + f"{'ratio':>10}")
    for label, case in kernel_cases(rng).items():
        times = {n: per_call(lambda: case(backends[n]), args.repeat) for n in names}
        ratio = ""
        if len(names) == 2:
            ratio = f"{times['python'] / times['cython']:.1f}x"
        print(f"{label:<26}" + "".join(f"{times[n] * 1e3:>16.4f}" for n in names) + f"{ratio:>10}")

    f = field_new(8)
    code = build_code(32, [(8, 2), (4, 4), (2, 8), (2, 16)], f)
    words = [encode(code, rng.integers(0, 256, code.k)) for _ in range(4)]
    received = [words[i % 4].erase(full_pattern(rng, code)) for i in range(100)]
    t_decode = timeit.timeit(lambda: [decode(code, x) for x in received], number=1) / len(received)
    t_warm = timeit.timeit(lambda: [decode(code, x) for x in received], number=1) / len(received)
    t_brute = timeit.timeit(lambda: [brute_solve(code, x) for x in received], number=1) / len(received)
    print()
    print(f"decode, new row orders  {t_decode * 1e3:8.3f} ms")
    print(f"decode, cached factors  {t_warm * 1e3:8.3f} ms")
    print(f"brute-force solve       {t_brute * 1e3:8.3f} ms")
    print(f"speedup (cold / warm)   {t_brute / t_decode:8.2f}x / {t_brute / t_warm:.2f}x")


if __name__ == "__main__":
    main()
