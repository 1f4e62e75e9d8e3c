"""Independent brute-force implementations of every measurement.

These are deliberately written against plain dict/set adjacency with naive
algorithms (exhaustive subset enumeration, exhaustive shortest-path
enumeration, textbook Pearson) so they share no code with the production
kernels they check.
"""

from __future__ import annotations

import math
from collections import deque
from itertools import combinations

from notenet.graph import WeightedGraph


def adjacency(g: WeightedGraph) -> dict[str, set[str]]:
    adj: dict[str, set[str]] = {u: set() for u in g.nodes}
    for u, v, _ in g.edges():
        adj[u].add(v)
        adj[v].add(u)
    return adj


def bfs_distances(adj: dict[str, set[str]], src: str) -> dict[str, int]:
    dist = {src: 0}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def oracle_degree_stats(g: WeightedGraph) -> tuple[float, float, float, float]:
    adj = adjacency(g)
    if not adj:
        return 0.0, 0.0, 0.0, 0.0
    degrees = [len(adj[u]) for u in adj]
    mean = sum(degrees) / len(degrees)
    var = sum((d - mean) ** 2 for d in degrees) / len(degrees)
    return mean, float(max(degrees)), float(min(degrees)), math.sqrt(var)


def oracle_aspl(g: WeightedGraph) -> float:
    adj = adjacency(g)
    n = len(adj)
    if n <= 1:
        return 0.0
    total = 0
    for src in adj:
        dist = bfs_distances(adj, src)
        total += sum(d for node, d in dist.items() if node != src)
    return total / (n - 1)


def _all_shortest_paths(adj: dict[str, set[str]], s: str, t: str) -> list[list[str]]:
    dist = bfs_distances(adj, s)
    if t not in dist:
        return []
    paths = []

    def walk(node: str, path: list[str]) -> None:
        if node == t:
            paths.append(path)
            return
        for nxt in adj[node]:
            if nxt in dist and dist[nxt] == dist[node] + 1 and dist[nxt] <= dist[t]:
                walk(nxt, path + [nxt])

    walk(s, [s])
    return [p for p in paths if len(p) - 1 == dist[t]]


def oracle_betweenness_avg(g: WeightedGraph) -> float:
    adj = adjacency(g)
    nodes = sorted(adj)
    n = len(nodes)
    if n < 3:
        return 0.0
    bc = {u: 0.0 for u in nodes}
    for s, t in combinations(nodes, 2):
        paths = _all_shortest_paths(adj, s, t)
        if not paths:
            continue
        for v in nodes:
            if v in (s, t):
                continue
            through = sum(1 for p in paths if v in p)
            bc[v] += through / len(paths)
    norm = (n - 1) * (n - 2) / 2
    return sum(bc[v] / norm for v in nodes) / n


def oracle_clustering(g: WeightedGraph) -> float:
    adj = adjacency(g)
    nodes = sorted(adj)
    triangles = sum(
        1 for a, b, c in combinations(nodes, 3)
        if b in adj[a] and c in adj[a] and c in adj[b])
    triples = sum(
        1 for v in nodes for _ in combinations(sorted(adj[v]), 2))
    if triples == 0:
        return 0.0
    return 3 * triangles / triples


def oracle_assortativity(g: WeightedGraph) -> float:
    adj = adjacency(g)
    xs, ys = [], []
    for u, v, _ in g.edges():
        xs += [len(adj[u]), len(adj[v])]
        ys += [len(adj[v]), len(adj[u])]
    if len(xs) < 4:
        return 0.0
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    cov = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    vx = sum((x - mx) ** 2 for x in xs)
    vy = sum((y - my) ** 2 for y in ys)
    if vx == 0 or vy == 0:
        return 0.0
    return cov / math.sqrt(vx * vy)


def _subset_connected(adj: dict[str, set[str]], subset: tuple[str, ...]) -> bool:
    allowed = set(subset)
    seen = {subset[0]}
    queue = deque([subset[0]])
    while queue:
        u = queue.popleft()
        for v in adj[u] & allowed:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen == allowed


def oracle_motifs(g: WeightedGraph) -> tuple[int, int]:
    adj = adjacency(g)
    nodes = sorted(adj)
    mt3 = sum(1 for s in combinations(nodes, 3) if _subset_connected(adj, s))
    mt4 = sum(1 for s in combinations(nodes, 4) if _subset_connected(adj, s))
    return mt3, mt4


def oracle_measure_all(g: WeightedGraph) -> tuple[float, ...]:
    """All ten measurements in canonical order (ASS..MT4)."""
    deg, mx, mn, sd = oracle_degree_stats(g)
    mt3, mt4 = oracle_motifs(g)
    return (
        oracle_assortativity(g),
        deg, mx, mn,
        oracle_betweenness_avg(g),
        oracle_clustering(g),
        oracle_aspl(g),
        sd,
        float(mt3), float(mt4),
    )
