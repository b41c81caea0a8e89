"""Compare the compiled and pure-Python kernel lanes.

Times ssa_chain and em_chain on identical seeded workloads and verifies the
lanes produce bit-identical outputs (they share the random-stream recipes,
so any divergence is a bug, not noise).

Run:  python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from lvthermo import _kernels_py
from lvthermo.stochastic import path_rng

try:
    from lvthermo import _kernels as compiled
except ImportError:
    compiled = None


def bench(label, fn, repeats=3):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    print(f"  {label:12s} {best * 1e3:10.2f} ms")
    return out, best


def identical(a, b):
    return all(np.array_equal(x, y) for x, y in zip(a, b))


def main():
    if compiled is None:
        print("compiled extension not built; nothing to compare")
        return

    print("ssa_chain: Omega = 2000, t_max = 20 (~5e5 events)")
    args = (2000, 2000, 2000.0, 1.0, 20.0)
    out_c, t_c = bench("cython", lambda: compiled.ssa_chain(*args, path_rng(1)))
    out_p, t_p = bench("python", lambda: _kernels_py.ssa_chain(*args,
                                                               path_rng(1)))
    print(f"  events: {out_c[0].size - 1}, speedup {t_p / t_c:.1f}x, "
          f"identical: {identical(out_c, out_p)}")

    print("em_chain: eps = 0.01, dt = 1e-4, t_max = 50 (5e5 steps)")
    args = (1.2, 1.0, 1.0, 0.01, 1e-4, 50.0, 1000)
    out_c, t_c = bench("cython", lambda: compiled.em_chain(*args, path_rng(2)))
    out_p, t_p = bench("python", lambda: _kernels_py.em_chain(*args,
                                                              path_rng(2)))
    print(f"  records: {out_c[0].size}, speedup {t_p / t_c:.1f}x, "
          f"identical: {identical(out_c, out_p)}")


if __name__ == "__main__":
    main()
