"""Topological measurements of pruned note networks.

Ten measurements are computed per graph, in the canonical order
ASS, DEG, MAX, MIN, BET, CC, ASPL, SD, MT3, MT4:

* ASS  - degree assortativity (Pearson correlation of endpoint degrees
  over both orientations of every edge; 0 when degenerate).
* DEG / MAX / MIN - mean, maximum and minimum node degree.
* BET  - mean shortest-path betweenness centrality, endpoint-excluded and
  normalized per node by (N-1)(N-2)/2.
* CC   - transitivity: 3 * triangles / connected triples.
* ASPL - sum of unweighted shortest-path lengths over ordered pairs of
  distinct same-component nodes, divided by N - 1 (note: N - 1, not the
  number of pairs).
* SD   - population standard deviation of the degree sequence.
* MT3 / MT4 - counts of connected induced subgraphs on 3 and 4 nodes.

All measurements treat the graph as unweighted and simple; edge weights
influence only the pruning that produced the graph, and self-loops (when
present) only keep their node in the node set. The empty graph maps to the
all-zero vector, and every degenerate denominator maps to 0 so feature
vectors stay finite and fixed-width.

The heavy kernels (BFS distance sums, Brandes betweenness, triangle and
connected-subgraph counting) live in a compiled extension; a pure-Python
implementation with identical semantics is selected at import time when the
extension is unavailable or NOTENET_PURE_PYTHON is set.
"""

from __future__ import annotations

import math
import os
from typing import NamedTuple

import numpy as np

from ..graph import WeightedGraph

if os.environ.get("NOTENET_PURE_PYTHON", "") not in ("", "0"):
    from . import _reference as _kernels
    BACKEND = "python"
else:
    try:
        from . import _speedups as _kernels  # type: ignore[no-redef]
        BACKEND = "compiled"
    except ImportError:
        from . import _reference as _kernels  # type: ignore[no-redef]
        BACKEND = "python"

MEASUREMENT_NAMES = ("ASS", "DEG", "MAX", "MIN", "BET", "CC", "ASPL", "SD", "MT3", "MT4")


class MeasurementVector(NamedTuple):
    """The ten measurements of one graph, in canonical order."""

    ass: float
    deg: float
    max: float
    min: float
    bet: float
    cc: float
    aspl: float
    sd: float
    mt3: float
    mt4: float


ZERO_VECTOR = MeasurementVector(*([0.0] * 10))


def backend_name() -> str:
    """Which kernel implementation is active: 'compiled' or 'python'."""
    return BACKEND


def graph_to_csr(g: WeightedGraph) -> tuple[int, np.ndarray, np.ndarray]:
    """CSR adjacency of the simple skeleton, nodes sorted for determinism."""
    nodes = sorted(g.nodes)
    index = {u: i for i, u in enumerate(nodes)}
    adj: list[list[int]] = [[] for _ in nodes]
    for u, v, _ in g.edges():
        iu, iv = index[u], index[v]
        adj[iu].append(iv)
        adj[iv].append(iu)
    for row in adj:
        row.sort()
    indptr = np.zeros(len(nodes) + 1, dtype=np.int32)
    indptr[1:] = np.cumsum([len(row) for row in adj], dtype=np.int64)
    indices = np.array([v for row in adj for v in row], dtype=np.int32)
    return len(nodes), indptr, indices


def _degree_stats_csr(n: int, indptr: np.ndarray) -> tuple[float, float, float, float]:
    if n == 0:
        return 0.0, 0.0, 0.0, 0.0
    deg = np.diff(indptr)
    return (float(deg.mean()), float(deg.max()), float(deg.min()),
            float(deg.std(ddof=0)))


def _assortativity_csr(n: int, indptr: np.ndarray, indices: np.ndarray) -> float:
    if indices.size < 4:  # fewer than 2 edges
        return 0.0
    deg = np.diff(indptr).astype(np.float64)
    x = np.repeat(deg, np.diff(indptr))
    y = deg[indices]
    dx = x - x.mean()
    dy = y - y.mean()
    vx = float(dx @ dx)
    vy = float(dy @ dy)
    if vx == 0.0 or vy == 0.0:
        return 0.0
    return float(np.clip((dx @ dy) / math.sqrt(vx * vy), -1.0, 1.0))


def degree_stats(g: WeightedGraph) -> tuple[float, float, float, float]:
    """(mean degree, max degree, min degree, population std of degrees)."""
    n, indptr, _ = graph_to_csr(g)
    return _degree_stats_csr(n, indptr)


def aspl(g: WeightedGraph) -> float:
    """Ordered-pair distance sum over same-component pairs, divided by N - 1."""
    n, indptr, indices = graph_to_csr(g)
    if n <= 1:
        return 0.0
    return _kernels.distance_sum(n, indptr, indices) / (n - 1)


def betweenness_avg(g: WeightedGraph) -> float:
    """Mean pair-normalized, endpoint-excluded betweenness centrality."""
    n, indptr, indices = graph_to_csr(g)
    if n < 3:
        return 0.0
    raw = _kernels.betweenness(n, indptr, indices)
    norm = (n - 1) * (n - 2) / 2.0
    return float(np.mean(raw / norm))


def clustering_global(g: WeightedGraph) -> float:
    """Transitivity: 3 * triangles / connected triples (0 when no triples)."""
    n, indptr, indices = graph_to_csr(g)
    triangles, triples = _kernels.triangle_triple_counts(n, indptr, indices)
    if triples == 0:
        return 0.0
    return 3.0 * triangles / triples


def assortativity_degree(g: WeightedGraph) -> float:
    """Pearson correlation of endpoint degrees over all edge orientations."""
    n, indptr, indices = graph_to_csr(g)
    return _assortativity_csr(n, indptr, indices)


def motif_counts(g: WeightedGraph) -> tuple[int, int]:
    """Counts of connected induced subgraphs on 3 and on 4 nodes."""
    n, indptr, indices = graph_to_csr(g)
    return _kernels.connected_subgraph_counts(n, indptr, indices)


def measure_all(g: WeightedGraph) -> MeasurementVector:
    """All ten measurements of one graph, sharing a single CSR conversion."""
    n, indptr, indices = graph_to_csr(g)
    if n == 0:
        return ZERO_VECTOR
    deg, mx, mn, sd = _degree_stats_csr(n, indptr)
    ass = _assortativity_csr(n, indptr, indices)
    aspl_value = _kernels.distance_sum(n, indptr, indices) / (n - 1) if n > 1 else 0.0
    if n < 3:
        bet = 0.0
    else:
        raw = _kernels.betweenness(n, indptr, indices)
        bet = float(np.mean(raw / ((n - 1) * (n - 2) / 2.0)))
    triangles, triples = _kernels.triangle_triple_counts(n, indptr, indices)
    cc = 3.0 * triangles / triples if triples else 0.0
    mt3, mt4 = _kernels.connected_subgraph_counts(n, indptr, indices)
    return MeasurementVector(ass, deg, mx, mn, bet, cc, aspl_value, sd,
                             float(mt3), float(mt4))
