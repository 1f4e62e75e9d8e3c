"""Note sequence to weighted network mapping, plus weight-threshold pruning.

The rendered note string is traversed with a sliding window of ws characters
advancing st characters per step; each (current word, next word) pair
increments the weight of one undirected edge. With the defaults ws=2, st=2
and two-character note tokens this connects every note to its successor
exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ConfigError
from .notes import NoteSequence, NoteSymbol

TOKEN_WIDTH = 2  # rendered notes are letter + octave digit

SELF_EDGE_SKIP = "skip"
SELF_EDGE_ALLOW = "allow"
SELF_EDGE_POLICIES = (SELF_EDGE_SKIP, SELF_EDGE_ALLOW)


@dataclass(frozen=True)
class TraversalParams:
    """Word size and step size, both measured in characters."""

    ws: int = 2
    st: int = 2

    def __post_init__(self):
        if self.ws < 1 or self.st < 1:
            raise ConfigError(f"ws and st must be >= 1, got ws={self.ws} st={self.st}")


class WeightedGraph:
    """Undirected simple graph with positive integer edge weights.

    Nodes are strings; the node set is exactly the set of edge endpoints
    (plus self-loop carriers when the graph was built with the "allow"
    self-edge policy, stored separately so ordinary edges stay simple).
    Instances are treated as immutable values.
    """

    __slots__ = ("_edges", "_loops", "_nodes")

    def __init__(self, edges: Mapping[tuple[str, str], int] | Iterable = (),
                 loops: Mapping[str, int] | None = None):
        items = edges.items() if isinstance(edges, Mapping) else edges
        store: dict[tuple[str, str], int] = {}
        for (u, v), w in items:
            if u == v:
                raise ValueError(f"self-edge {u!r} not allowed in the edge map")
            if int(w) < 1:
                raise ValueError(f"edge weight must be >= 1, got {w} for {u!r}-{v!r}")
            key = (u, v) if u <= v else (v, u)
            store[key] = store.get(key, 0) + int(w)
        self._edges = store
        self._loops = {u: int(w) for u, w in (loops or {}).items() if int(w) >= 1}
        nodes = set()
        for u, v in store:
            nodes.add(u)
            nodes.add(v)
        nodes.update(self._loops)
        self._nodes = frozenset(nodes)

    @property
    def nodes(self) -> frozenset[str]:
        return self._nodes

    @property
    def loops(self) -> dict[str, int]:
        return dict(self._loops)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def total_weight(self) -> int:
        return sum(self._edges.values()) + sum(self._loops.values())

    def is_empty(self) -> bool:
        return not self._nodes

    def edges(self) -> Iterator[tuple[str, str, int]]:
        for (u, v), w in self._edges.items():
            yield u, v, w

    def sorted_edges(self) -> list[tuple[str, str, int]]:
        return sorted(self.edges())

    def weight(self, u: str, v: str) -> int:
        if u == v:
            return self._loops.get(u, 0)
        key = (u, v) if u <= v else (v, u)
        return self._edges.get(key, 0)

    def neighbors(self, u: str) -> list[str]:
        out = []
        for a, b in self._edges:
            if a == u:
                out.append(b)
            elif b == u:
                out.append(a)
        return sorted(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self._edges == other._edges and self._loops == other._loops

    def __hash__(self):
        return hash((frozenset(self._edges.items()), frozenset(self._loops.items())))

    def __repr__(self) -> str:
        return (f"WeightedGraph({len(self._nodes)} nodes, "
                f"{len(self._edges)} edges, total weight {self.total_weight})")

    def to_edgelist_text(self) -> str:
        """Debug dump: one 'u v weight' line per edge, lexicographically sorted."""
        lines = [f"{u} {v} {w}" for u, v, w in self.edges()]
        lines += [f"{u} {u} {w}" for u, w in self._loops.items()]
        return "".join(line + "\n" for line in sorted(lines))

    def write_edgelist(self, path: str | Path) -> None:
        Path(path).write_text(self.to_edgelist_text(), encoding="utf-8")


def build_network(seq: NoteSequence | Sequence[NoteSymbol],
                  params: TraversalParams = TraversalParams(),
                  self_edges: str = SELF_EDGE_SKIP,
                  strict: bool = True) -> WeightedGraph:
    """Map a note sequence to its weighted adjacency network.

    In strict mode ws and st must be multiples of the rendered token width
    so windows align with note boundaries.
    """
    if self_edges not in SELF_EDGE_POLICIES:
        raise ConfigError(f"unknown self-edge policy {self_edges!r}")
    if strict and (params.ws % TOKEN_WIDTH or params.st % TOKEN_WIDTH):
        raise ConfigError(
            f"ws={params.ws} st={params.st} do not align with "
            f"{TOKEN_WIDTH}-character note tokens")

    notes = seq.notes if isinstance(seq, NoteSequence) else seq
    text = "".join(str(n) for n in notes)
    ws, st = params.ws, params.st
    edges: dict[tuple[str, str], int] = {}
    loops: dict[str, int] = {}
    k = 0
    while k + st + ws <= len(text):
        u = text[k:k + ws]
        v = text[k + st:k + st + ws]
        if u == v:
            if self_edges == SELF_EDGE_ALLOW:
                loops[u] = loops.get(u, 0) + 1
        else:
            key = (u, v) if u <= v else (v, u)
            edges[key] = edges.get(key, 0) + 1
        k += st
    return WeightedGraph(edges, loops)


def prune_by_weight(g: WeightedGraph, t: int) -> WeightedGraph:
    """Subgraph of edges with weight strictly greater than t.

    Nodes left without any incident edge (or surviving self-loop) are
    dropped; the input graph is unmodified.
    """
    if t < 0:
        raise ConfigError(f"threshold must be >= 0, got {t}")
    edges = {(u, v): w for u, v, w in g.edges() if w > t}
    loops = {u: w for u, w in g.loops.items() if w > t}
    return WeightedGraph(edges, loops)
