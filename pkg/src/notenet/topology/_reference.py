"""Pure-Python measurement kernels (fallback for the compiled module).

All kernels take a graph as CSR adjacency: node count n, indptr of length
n + 1, and a flat neighbor array indices. Semantics match
notenet.topology._speedups exactly.
"""

from __future__ import annotations

from collections import deque

import numpy as np


def _adjacency(n: int, indptr, indices) -> list[list[int]]:
    return [list(indices[indptr[i]:indptr[i + 1]]) for i in range(n)]


def distance_sum(n: int, indptr, indices) -> int:
    """Sum of BFS distances over ordered pairs of distinct reachable nodes."""
    adj = _adjacency(n, indptr, indices)
    total = 0
    for s in range(n):
        dist = [-1] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    total += dist[v]
                    queue.append(v)
    return total


def betweenness(n: int, indptr, indices) -> np.ndarray:
    """Raw shortest-path betweenness per node (Brandes).

    Endpoints excluded; each unordered pair counted once; no normalization.
    """
    bc = np.zeros(n)
    if n < 3:
        return bc
    adj = _adjacency(n, indptr, indices)
    for s in range(n):
        dist = [-1] * n
        sigma = [0.0] * n
        delta = [0.0] * n
        dist[s] = 0
        sigma[s] = 1.0
        order = [s]
        head = 0
        while head < len(order):
            u = order[head]
            head += 1
            for v in adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    order.append(v)
                if dist[v] == dist[u] + 1:
                    sigma[v] += sigma[u]
        for w in reversed(order[1:]):
            coeff = (1.0 + delta[w]) / sigma[w]
            for v in adj[w]:
                if dist[v] == dist[w] - 1:
                    delta[v] += sigma[v] * coeff
            bc[w] += delta[w]
    return bc / 2.0


def triangle_triple_counts(n: int, indptr, indices) -> tuple[int, int]:
    """(number of triangles, number of connected triples)."""
    adj = [set(indices[indptr[i]:indptr[i + 1]]) for i in range(n)]
    triangles = 0
    triples = 0
    for u in range(n):
        deg = len(adj[u])
        triples += deg * (deg - 1) // 2
        for v in adj[u]:
            if v > u:
                for w in adj[v]:
                    if w > v and w in adj[u]:
                        triangles += 1
    return triangles, triples


def connected_subgraph_counts(n: int, indptr, indices) -> tuple[int, int]:
    """Counts of connected induced subgraphs on 3 and on 4 nodes.

    Uses the ESU enumeration: each connected subset is generated exactly
    once by extending from its minimum node with exclusive neighbors.
    """
    adj = _adjacency(n, indptr, indices)
    c3 = 0
    c4 = 0

    def extend(sub_size: int, ext: list[int], vis: set[int], root: int) -> None:
        nonlocal c3, c4
        while ext:
            w = ext.pop()
            if sub_size + 1 == 4:
                c4 += 1
                continue
            if sub_size + 1 == 3:
                c3 += 1
            added = [u for u in adj[w] if u > root and u not in vis]
            vis.update(added)
            extend(sub_size + 1, ext + added, vis, root)
            vis.difference_update(added)

    for root in range(n):
        ext = [u for u in adj[root] if u > root]
        vis = {root, *ext}
        extend(1, list(ext), vis, root)
    return c3, c4
