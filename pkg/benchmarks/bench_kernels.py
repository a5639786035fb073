#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy reference.

Usage: python benchmarks/bench_kernels.py [n_samples]

The two backends are bit-identical (enforced by tests/test_kernels.py);
this script only measures throughput on the Monte-Carlo hot path.
"""

import sys
import time

import numpy as np

from jkelab.kernels import reference

try:
    from jkelab.kernels import _fast
except ImportError:
    _fast = None


def time_call(func, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        func(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 10_000_000
    rng = np.random.default_rng(0)

    samples = rng.normal(0.0, 2000.0, n)
    step, full_scale = 0.1258984964, 2.5 * 2 ** 14
    w = 14
    raw = rng.bytes((n * w + 7) // 8)

    cases = [
        ("quantize_midrise", (samples, step, full_scale)),
        ("unpack_symbols", (raw, n, w)),
    ]

    print(f"n = {n:,} samples, best of 5 runs")
    print(f"{'kernel':<18} {'numpy ref':>12} {'compiled':>12} {'speedup':>9}")
    for name, args in cases:
        t_ref = time_call(getattr(reference, name), *args)
        if _fast is None:
            print(f"{name:<18} {t_ref * 1e3:>10.1f}ms {'absent':>12} {'-':>9}")
            continue
        t_fast = time_call(getattr(_fast, name), *args)
        ok = np.array_equal(getattr(reference, name)(*args),
                            getattr(_fast, name)(*args))
        print(f"{name:<18} {t_ref * 1e3:>10.1f}ms {t_fast * 1e3:>10.1f}ms "
              f"{t_ref / t_fast:>8.2f}x{'' if ok else '  MISMATCH!'}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
