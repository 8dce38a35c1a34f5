"""Benchmark the compiled kernels against the pure-Python fallback.

Run:  python benchmarks/bench_backends.py
"""

import time

import numpy as np

from sortedprox import backend


def instance(rng, p):
    y = np.sort(np.abs(rng.normal(0, 3, p)))[::-1].copy()
    lam = np.sort(np.abs(rng.normal(0, 2, p)))[::-1].copy()
    return y, lam


def timeit(fn, min_time=0.2):
    fn()  # warm up
    n = 0
    start = time.perf_counter()
    while time.perf_counter() - start < min_time:
        fn()
        n += 1
    return (time.perf_counter() - start) / n


def main():
    if "compiled" not in backend.available_backends():
        print("compiled backend not built; nothing to compare")
        return
    comp = backend.get_backend("compiled")
    pure = backend.get_backend("python")
    rng = np.random.default_rng(0)

    cases = []
    for p in (10, 100, 1000):
        y, lam = instance(rng, p)
        cases.append((f"prefix search lq(1/2)   p={p:5d}",
                      lambda m, y=y, lam=lam: m.dpav_run(y, lam, 4, 0.5)))
        cases.append((f"PAV chi lq(1/2)         p={p:5d}",
                      lambda m, y=y, lam=lam: m.pav_blocks(
                          y, lam, backend.RULE_CHI, 4, 0.5, 1.0)))
        cases.append((f"PAV sorted-l1           p={p:5d}",
                      lambda m, y=y, lam=lam: m.pav_blocks(
                          y, lam, backend.RULE_WC, 0, 0.0, 1.0)))
        cases.append((f"PAV sorted-MCP(2)       p={p:5d}",
                      lambda m, y=y, lam=lam: m.pav_blocks(
                          y, lam, backend.RULE_WC, 1, 2.0, 0.9)))

    print(f"{'kernel':28s} {'python':>12s} {'compiled':>12s} {'speedup':>9s}")
    for name, fn in cases:
        tp = timeit(lambda: fn(pure))
        tc = timeit(lambda: fn(comp))
        print(f"{name:28s} {tp * 1e6:9.1f} us {tc * 1e6:9.1f} us "
              f"{tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
