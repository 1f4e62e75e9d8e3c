"""Benchmark the compiled measurement kernels against the pure-Python fallback.

Times each kernel on random graphs sized like real note networks (a few
dozen nodes) and prints per-call latencies plus the speedup. Runs with
whichever backends are importable.

    python3 benchmarks/bench_topology.py [--nodes 20 42 ...] [--repeat 5]
"""

from __future__ import annotations

import argparse
import importlib
import time

import numpy as np

from notenet.graph import WeightedGraph
from notenet.topology import graph_to_csr

KERNELS = ("distance_sum", "betweenness", "triangle_triple_counts",
           "connected_subgraph_counts")


def load_backends() -> dict[str, object]:
    backends = {}
    for label, module in (("python", "notenet.topology._reference"),
                          ("compiled", "notenet.topology._speedups")):
        try:
            backends[label] = importlib.import_module(module)
        except ImportError:
            print(f"note: backend {label!r} unavailable")
    return backends


def random_graph(n: int, p: float, seed: int) -> WeightedGraph:
    rng = np.random.default_rng(seed)
    edges = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges[(f"n{i:02d}", f"n{j:02d}")] = int(rng.integers(1, 30))
    return WeightedGraph(edges)


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--nodes", type=int, nargs="+", default=[15, 30, 42])
    parser.add_argument("--density", type=float, default=0.25)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = load_backends()
    if not backends:
        raise SystemExit("no kernel backend importable")

    header = f"{'kernel':<28}{'n':>5}{'edges':>7}"
    for label in backends:
        header += f"{label + ' (ms)':>16}"
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))

    for n in args.nodes:
        g = random_graph(n, args.density, seed=n)
        n_csr, indptr, indices = graph_to_csr(g)
        for kernel in KERNELS:
            timings = {}
            for label, module in backends.items():
                fn = getattr(module, kernel)
                timings[label] = best_of(
                    lambda: fn(n_csr, indptr, indices), args.repeat)
            row = f"{kernel:<28}{n:>5}{g.edge_count:>7}"
            for label in backends:
                row += f"{timings[label] * 1e3:>16.3f}"
            if len(timings) == 2:
                row += f"{timings['python'] / timings['compiled']:>9.1f}x"
            print(row)
        print()


if __name__ == "__main__":
    main()
