"""Simple undirected graph with dense integer vertex ids.

Vertices are the integers ``0 .. n-1``.  Parallel edges and self-loops are
rejected at insertion.  Isolated vertices are legal; algorithms that cannot
handle them strip them explicitly.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable

from .errors import GraphError


class Graph:
    """Mutable undirected simple graph.

    Adjacency lists preserve insertion order, which keeps every algorithm in
    this package deterministic for a fixed construction sequence.
    """

    __slots__ = ("_adj", "_edges")

    def __init__(self, n: int = 0) -> None:
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        self._adj: list[list[int]] = [[] for _ in range(n)]
        self._edges: set[tuple[int, int]] = set()

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        g = cls(n)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    @classmethod
    def _from_parts(cls, adj: list[list[int]], edges: set[tuple[int, int]]) -> "Graph":
        # Trusted fast path for copies; skips per-edge validation.
        g = cls.__new__(cls)
        g._adj = adj
        g._edges = edges
        return g

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def edges(self) -> list[tuple[int, int]]:
        """Return the edges as sorted canonical ``(u, v)`` pairs with ``u < v``."""
        return sorted(self._edges)

    def add_vertex(self) -> int:
        """Append an isolated vertex and return its id."""
        self._adj.append([])
        return len(self._adj) - 1

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < len(self._adj):
            raise GraphError(f"unknown vertex id {v} (graph has {len(self._adj)} vertices)")

    def add_edge(self, u: int, v: int) -> None:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise GraphError(f"self-loop at vertex {u} is not allowed")
        key = (u, v) if u < v else (v, u)
        if key in self._edges:
            raise GraphError(f"duplicate edge {key}")
        self._edges.add(key)
        self._adj[u].append(v)
        self._adj[v].append(u)

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        key = (u, v) if u < v else (v, u)
        return key in self._edges

    def neighbors(self, v: int) -> list[int]:
        """Return the adjacency list of ``v``.  Callers must not mutate it."""
        self._check_vertex(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._adj[v])

    def copy(self) -> "Graph":
        return Graph._from_parts([list(a) for a in self._adj], set(self._edges))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Graph(n={self.n}, m={self.edge_count})"


def max_degree(g: Graph) -> int:
    """Maximum vertex degree; 0 for a graph without vertices or edges."""
    if g.n == 0:
        return 0
    return max(len(g.neighbors(v)) for v in range(g.n))


def edges_incident_to_set(g: Graph, v: int, targets: Iterable[int]) -> list[tuple[int, int]]:
    """Edges from ``v`` into ``targets``, as ``(v, w)`` pairs ordered by ``w``.

    Raises :class:`GraphError` when ``v`` or any target id is out of range.
    """
    g._check_vertex(v)
    tset = set()
    for w in targets:
        g._check_vertex(w)
        tset.add(w)
    return [(v, w) for w in sorted(tset) if g.has_edge(v, w)]


def connected_components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest member."""
    seen = bytearray(g.n)
    out: list[list[int]] = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = 1
        comp = [start]
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in g.neighbors(x):
                if not seen[y]:
                    seen[y] = 1
                    comp.append(y)
                    queue.append(y)
        comp.sort()
        out.append(comp)
    return out
