"""Benchmark the compiled kernels against the pure-Python fallback.

Runs both lanes in one process: the compiled extension is imported
directly, the fallback through its public functions, so results are
comparable without re-launching under SPSE_PURE_PYTHON.

Usage: python3 benchmarks/bench_kernels.py [--nodes 200] [--repeat 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from spse import kernels
from spse.counter import dag_decompose
from spse.graph import generate

try:
    from spse import _kernels as ext
except ImportError:
    ext = None


def _upper_triangular(n: int, p: float, seed: int) -> np.ndarray:
    g = generate("er", n=n, p=p, seed=seed)
    order = dag_decompose(g, 0, 4, seed)
    dense = g.dense_adjacency()
    perm = np.asarray(order.perm)
    return np.ascontiguousarray(np.triu(dense[np.ix_(perm, perm)], k=1))


def _best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_power_stack(n: int, repeat: int) -> None:
    tri = _upper_triangular(n, p=4.0 / n, seed=1)
    k_max = 10
    compiled = None
    if ext is not None:
        compiled = _best_of(lambda: ext.power_stack(tri, k_max), repeat)
    python = _best_of(lambda: kernels.power_stack_python(tri, k_max), repeat)
    _row("power_stack", f"n={n} K={k_max}", compiled, python)


def bench_exact_counts(n: int, repeat: int) -> None:
    g = generate("er", n=n, p=0.4, seed=3)
    dense = np.ascontiguousarray(g.dense_adjacency())
    starts = np.arange(n, dtype=np.int64)
    k_max = n - 1
    compiled = None
    if ext is not None:
        compiled = _best_of(lambda: ext.exact_counts(dense, starts, k_max), repeat)
    python = _best_of(lambda: kernels.exact_counts_python(dense, starts, k_max), repeat)
    _row("exact_counts", f"n={n} K={k_max}", compiled, python)


def _row(name: str, size: str, compiled: float | None, python: float) -> None:
    if compiled is None:
        print(f"{name:<14} {size:<14} compiled: unavailable  python: {python*1e3:8.2f} ms")
        return
    print(
        f"{name:<14} {size:<14} compiled: {compiled*1e3:8.2f} ms  "
        f"python: {python*1e3:8.2f} ms  speedup: {python/compiled:5.1f}x"
    )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--nodes", type=int, default=200, help="power_stack graph size")
    parser.add_argument("--exact-nodes", type=int, default=14, help="exact_counts graph size")
    parser.add_argument("--repeat", type=int, default=5, help="take the best of this many runs")
    args = parser.parse_args()

    print(f"active backend: {kernels.BACKEND}")
    bench_power_stack(args.nodes, args.repeat)
    bench_exact_counts(args.exact_nodes, args.repeat)


if __name__ == "__main__":
    main()
