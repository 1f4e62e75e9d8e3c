from __future__ import annotations

import numpy as np
import pytest

from notenet.graph import WeightedGraph


def random_weighted_graph(rng: np.random.Generator, max_nodes: int = 6,
                          max_weight: int = 5) -> WeightedGraph:
    """Random graph with up to max_nodes labeled nodes; may be disconnected."""
    n = int(rng.integers(0, max_nodes + 1))
    p = float(rng.uniform(0.1, 0.9))
    edges = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges[(f"n{i}", f"n{j}")] = int(rng.integers(1, max_weight + 1))
    return WeightedGraph(edges)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)
