"""Degeneracy orderings.

A graph is k-degenerate when every subgraph has a vertex of degree at most
k.  Equivalently there is a vertex ordering v_0, ..., v_{n-1} in which every
vertex has at most k neighbors *earlier* in the ordering; the smallest such
k is the degeneracy.  The orderings produced here certify the exact value.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import PreconditionError
from .graph import Graph


@dataclass
class DegeneracyOrdering:
    """A vertex ordering together with the degeneracy it certifies.

    ``order[i]`` is the vertex at position ``i``; ``position`` is the inverse
    permutation.  ``k`` is the exact degeneracy: no vertex has more than
    ``k`` neighbors at earlier positions, and some vertex meets the bound.
    """

    order: list[int]
    position: list[int]
    k: int


def degeneracy_ordering(g: Graph) -> DegeneracyOrdering:
    """Compute a degeneracy ordering by repeated minimum-degree removal.

    Vertices are peeled smallest-degree-first (ties broken by smallest vertex
    id) and the removal sequence is reversed, so each vertex ends up with at
    most ``k`` neighbors to its left.  The returned ``k`` is exact.

    The peeling queue is a lazy heap keyed by (current degree, id); stale
    entries are skipped on pop.
    """
    n = g.n
    if n == 0:
        return DegeneracyOrdering([], [], 0)
    adj = g._adj
    deg = [len(row) for row in adj]
    heap: list[tuple[int, int]] = [(deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    removed = bytearray(n)
    removal: list[int] = []
    k = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = 1
        removal.append(v)
        if d > k:
            k = d
        for u in adj[v]:
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    order = removal[::-1]
    position = [0] * n
    for i, v in enumerate(order):
        position[v] = i
    return DegeneracyOrdering(order, position, k)


def verify_ordering(g: Graph, ordering: DegeneracyOrdering, k: int) -> bool:
    """Check that every vertex has at most ``k`` neighbors earlier in the ordering."""
    pos = ordering.position
    if sorted(ordering.order) != list(range(g.n)) or len(pos) != g.n:
        return False
    left = [0] * g.n
    for u, v in g.edges():
        later = u if pos[u] > pos[v] else v
        left[later] += 1
        if left[later] > k:
            return False
    return True


def left_right_neighbors(g: Graph, ordering: DegeneracyOrdering, v: int) -> tuple[set[int], set[int]]:
    """Split the neighborhood of ``v`` by ordering position: (earlier, later)."""
    if not 0 <= v < g.n:
        raise PreconditionError(f"vertex {v} not in graph")
    pos = ordering.position
    pv = pos[v]
    left: set[int] = set()
    right: set[int] = set()
    for u in g.neighbors(v):
        if pos[u] < pv:
            left.add(u)
        else:
            right.add(u)
    return left, right
