"""Mutable edge coloring whose classes stay linear forests.

A ``ForestColoring`` assigns edges of an n-vertex graph to ``t`` classes
while tracking, per vertex and class, the colored degree (capped at 2) and
the up-to-two class neighbors.  Classes therefore consist of paths, isolated
vertices, and -- transiently, between a cycle-closing assignment and its
repair -- at most one cycle.  Callers are responsible for driving the state
back to acyclic; the structure only enforces the degree cap.

Connectivity queries (`would_close_cycle`) run on one union-find per class,
grown incrementally as edges are assigned.  Recoloring removes edges, which
union-find cannot undo, so the affected classes are flagged dirty and
rebuilt from the edge map on the next query.  Recolors are rare (they only
happen while repairing a cycle), so the rebuild cost is negligible in
practice while assignments stay near O(1).
"""

from __future__ import annotations

from array import array

from .errors import FeasibilityError, PreconditionError

NIL = -1


def edge_key(u: int, v: int) -> tuple[int, int]:
    """Canonical dictionary key for the undirected edge uv."""
    return (u, v) if u < v else (v, u)


class ForestColoring:
    """Edge -> class assignment with per-vertex class degrees capped at 2."""

    def __init__(self, n: int, t: int) -> None:
        if n < 0 or t < 0:
            raise PreconditionError(f"need n >= 0 and t >= 0, got n={n}, t={t}")
        self.n = n
        self.t = t
        self.colors: dict[tuple[int, int], int] = {}
        # Dense (vertex, class) tables: degree byte plus the two class neighbors.
        self._cd = bytearray(n * t)
        self._nb1 = array("i", [NIL]) * (n * t) if n * t else array("i")
        self._nb2 = array("i", [NIL]) * (n * t) if n * t else array("i")
        self._total = array("i", [0]) * n if n else array("i")
        # Per-class union-find, built lazily, invalidated by recolors.
        self._uf_parent: list[array | None] = [None] * t
        self._uf_dirty = bytearray(t)

    # ------------------------------------------------------------------ queries

    def class_degree(self, v: int, j: int) -> int:
        return self._cd[v * self.t + j]

    def colored_degree(self, v: int) -> int:
        """Total number of colored edges at ``v`` across all classes."""
        return self._total[v]

    def color_of(self, u: int, v: int) -> int | None:
        return self.colors.get(edge_key(u, v))

    def color_sets(self, v: int) -> tuple[list[int], list[int], list[int]]:
        """Partition class indices by the degree of ``v``: (degree 0, 1, 2).

        The three lists are ascending and always cover all ``t`` classes.
        """
        base = v * self.t
        cd = self._cd
        c0: list[int] = []
        c1: list[int] = []
        c2: list[int] = []
        for j in range(self.t):
            d = cd[base + j]
            if d == 0:
                c0.append(j)
            elif d == 1:
                c1.append(j)
            else:
                c2.append(j)
        return c0, c1, c2

    def class_neighbors(self, v: int, j: int) -> list[int]:
        """The at-most-two neighbors of ``v`` along class-``j`` edges."""
        i = v * self.t + j
        out = []
        if self._nb1[i] != NIL:
            out.append(self._nb1[i])
        if self._nb2[i] != NIL:
            out.append(self._nb2[i])
        return out

    def class_edges(self, j: int) -> list[tuple[int, int]]:
        """All edges currently in class ``j`` (sorted; not a hot path)."""
        return sorted(e for e, c in self.colors.items() if c == j)

    # ------------------------------------------------------------------ slots

    def _slot_add(self, v: int, j: int, u: int) -> None:
        i = v * self.t + j
        if self._nb1[i] == NIL:
            self._nb1[i] = u
        elif self._nb2[i] == NIL:
            self._nb2[i] = u
        else:  # pragma: no cover - guarded by the degree check
            raise FeasibilityError(f"vertex {v} already has two class-{j} edges")

    def _slot_remove(self, v: int, j: int, u: int) -> None:
        i = v * self.t + j
        if self._nb2[i] == u:
            self._nb2[i] = NIL
        elif self._nb1[i] == u:
            self._nb1[i] = self._nb2[i]
            self._nb2[i] = NIL
        else:  # pragma: no cover - structure corruption guard
            raise FeasibilityError(f"edge {v}-{u} missing from class-{j} slots")

    def _next_on_walk(self, j: int, cur: int, prev: int) -> int:
        """Step along class ``j`` from ``cur``, not back to ``prev``; NIL at a path end."""
        i = cur * self.t + j
        a = self._nb1[i]
        return a if a != prev else self._nb2[i]

    # ------------------------------------------------------------------ mutation

    def assign(self, u: int, v: int, j: int) -> None:
        """Color the uncolored edge uv with class ``j``.

        Rejects the call if either endpoint already has two class-``j``
        edges.  The assignment may close a cycle in class ``j``; callers that
        care must check :meth:`would_close_cycle` first and repair afterwards.
        """
        if u == v:
            raise PreconditionError(f"self-loop at {u}")
        if not 0 <= j < self.t:
            raise PreconditionError(f"class {j} out of range 0..{self.t - 1}")
        key = (u, v) if u < v else (v, u)
        if key in self.colors:
            raise FeasibilityError(f"edge {key} is already colored")
        t = self.t
        cd = self._cd
        iu = u * t + j
        iv = v * t + j
        if cd[iu] >= 2 or cd[iv] >= 2:
            raise FeasibilityError(f"assigning {key} to class {j} would exceed degree 2")
        cd[iu] += 1
        cd[iv] += 1
        self._slot_add(u, j, v)
        self._slot_add(v, j, u)
        self._total[u] += 1
        self._total[v] += 1
        self.colors[key] = j
        parent = self._uf_parent[j]
        if parent is not None and not self._uf_dirty[j]:
            self._union(parent, u, v)

    def recolor(self, u: int, v: int, j_new: int) -> None:
        """Move the colored edge uv to class ``j_new`` (no-op if already there)."""
        if not 0 <= j_new < self.t:
            raise PreconditionError(f"class {j_new} out of range 0..{self.t - 1}")
        key = (u, v) if u < v else (v, u)
        j_old = self.colors.get(key)
        if j_old is None:
            raise FeasibilityError(f"edge {key} is not colored")
        if j_old == j_new:
            return
        cd = self._cd
        t = self.t
        if cd[u * t + j_new] >= 2 or cd[v * t + j_new] >= 2:
            raise FeasibilityError(f"recoloring {key} to class {j_new} would exceed degree 2")
        cd[u * t + j_old] -= 1
        cd[v * t + j_old] -= 1
        cd[u * t + j_new] += 1
        cd[v * t + j_new] += 1
        self._slot_remove(u, j_old, v)
        self._slot_remove(v, j_old, u)
        self._slot_add(u, j_new, v)
        self._slot_add(v, j_new, u)
        self.colors[key] = j_new
        self._uf_dirty[j_old] = 1
        self._uf_dirty[j_new] = 1

    def swap_colors(self, e1: tuple[int, int], e2: tuple[int, int]) -> None:
        """Exchange the classes of two colored edges atomically.

        Both removals happen before either re-insertion, so a shared endpoint
        never sees a transient degree overflow.  Swapping edges of the same
        class is a no-op; swapping twice restores the original coloring.
        """
        k1 = edge_key(*e1)
        k2 = edge_key(*e2)
        c1 = self.colors.get(k1)
        c2 = self.colors.get(k2)
        if c1 is None or c2 is None:
            raise FeasibilityError(f"both edges must be colored: {k1}={c1}, {k2}={c2}")
        if k1 == k2:
            return
        if c1 == c2:
            return
        cd = self._cd
        t = self.t
        for (a, b), j in ((k1, c1), (k2, c2)):
            cd[a * t + j] -= 1
            cd[b * t + j] -= 1
            self._slot_remove(a, j, b)
            self._slot_remove(b, j, a)
        for (a, b), j in ((k1, c2), (k2, c1)):
            if cd[a * t + j] >= 2 or cd[b * t + j] >= 2:
                # Roll back is not attempted: this indicates a caller bug.
                raise FeasibilityError(f"swap would push degree above 2 at class {j}")
            cd[a * t + j] += 1
            cd[b * t + j] += 1
            self._slot_add(a, j, b)
            self._slot_add(b, j, a)
        self.colors[k1] = c2
        self.colors[k2] = c1
        self._uf_dirty[c1] = 1
        self._uf_dirty[c2] = 1

    # ------------------------------------------------------------------ connectivity

    def _ensure_uf(self, j: int) -> array:
        parent = self._uf_parent[j]
        if parent is None or self._uf_dirty[j]:
            parent = array("i", range(self.n))
            for (u, v), c in self.colors.items():
                if c == j:
                    self._union(parent, u, v)
            self._uf_parent[j] = parent
            self._uf_dirty[j] = 0
        return parent

    @staticmethod
    def _find(parent: array, x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    @classmethod
    def _union(cls, parent: array, a: int, b: int) -> None:
        ra = cls._find(parent, a)
        rb = cls._find(parent, b)
        if ra != rb:
            # Deterministic: larger root attaches under smaller.
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb

    def would_close_cycle(self, j: int, u: int, v: int) -> bool:
        """True iff ``u`` and ``v`` are already connected within class ``j``."""
        if not 0 <= j < self.t:
            raise PreconditionError(f"class {j} out of range 0..{self.t - 1}")
        parent = self._ensure_uf(j)
        return self._find(parent, u) == self._find(parent, v)

    def cycle_containing(self, j: int, u: int, v: int) -> list[int] | None:
        """The class-``j`` cycle through the colored edge uv, or None.

        Returned as a vertex sequence starting ``[u, v, ...]`` whose last
        vertex is again adjacent to ``u`` in class ``j``.  Walks the class
        directly (degree <= 2 makes the continuation unique), so it stays
        correct even when the union-find is dirty.
        """
        if self.colors.get(edge_key(u, v)) != j:
            raise PreconditionError(f"edge {u}-{v} is not colored {j}")
        out = [u, v]
        prev, cur = u, v
        limit = self.n + 1
        while True:
            nxt = self._next_on_walk(j, cur, prev)
            if nxt == NIL:
                return None
            if nxt == u:
                return out
            out.append(nxt)
            prev, cur = cur, nxt
            if len(out) > limit:  # pragma: no cover - corruption guard
                raise FeasibilityError(f"class {j} walk exceeded vertex count")

    def path_through(self, j: int, v: int) -> list[int]:
        """The maximal class-``j`` path containing ``v``, as an ordered vertex list.

        Raises if ``v`` is isolated in the class or its component is a cycle.
        """
        if self.class_degree(v, j) == 0:
            raise PreconditionError(f"vertex {v} is isolated in class {j}")
        nbrs = self.class_neighbors(v, j)
        half: list[list[int]] = []
        for first in nbrs:
            part = [first]
            prev, cur = v, first
            while True:
                nxt = self._next_on_walk(j, cur, prev)
                if nxt == NIL:
                    break
                if nxt == v:
                    raise FeasibilityError(f"component of {v} in class {j} is a cycle")
                part.append(nxt)
                prev, cur = cur, nxt
            half.append(part)
        if len(half) == 1:
            return [v] + half[0]
        return half[0][::-1] + [v] + half[1]

    # ------------------------------------------------------------------ validation

    def validate(self) -> list[str]:
        """Full-state consistency scan; returns human-readable problems.

        Recomputes degrees, slots, totals from the color map, checks the
        degree cap, and checks every class for cycles.  Intended for tests
        and debug assertions, not hot paths.
        """
        problems: list[str] = []
        n, t = self.n, self.t
        cd = bytearray(n * t)
        slots: dict[tuple[int, int], list[int]] = {}
        total = [0] * n
        for (u, v), j in self.colors.items():
            if not (0 <= u < n and 0 <= v < n and u < v):
                problems.append(f"bad edge key {(u, v)}")
                continue
            if not 0 <= j < t:
                problems.append(f"edge {(u, v)} has class {j} out of range")
                continue
            cd[u * t + j] += 1
            cd[v * t + j] += 1
            total[u] += 1
            total[v] += 1
            slots.setdefault((u, j), []).append(v)
            slots.setdefault((v, j), []).append(u)
        for v in range(n):
            for j in range(t):
                want = cd[v * t + j]
                if want > 2:
                    problems.append(f"vertex {v} has {want} class-{j} edges")
                if self._cd[v * t + j] != min(want, 255):
                    problems.append(
                        f"degree table mismatch at ({v},{j}): "
                        f"{self._cd[v * t + j]} stored, {want} actual"
                    )
                have = sorted(self.class_neighbors(v, j))
                if have != sorted(slots.get((v, j), [])):
                    problems.append(f"slot mismatch at ({v},{j})")
            if self._total[v] != total[v]:
                problems.append(f"total degree mismatch at {v}")
        for j in range(t):
            parent = array("i", range(n))
            for (u, v), c in self.colors.items():
                if c != j:
                    continue
                if self._find(parent, u) == self._find(parent, v):
                    problems.append(f"class {j} contains a cycle through edge {(u, v)}")
                else:
                    self._union(parent, u, v)
        return problems


class ColorClassView:
    """Read-only snapshot of one class: components, endpoints, cycle flags."""

    def __init__(self, fc: ForestColoring, j: int) -> None:
        if not 0 <= j < fc.t:
            raise PreconditionError(f"class {j} out of range 0..{fc.t - 1}")
        self.j = j
        self.component_of: dict[int, int] = {}
        self.components: list[list[int]] = []
        self.endpoints: list[list[int]] = []
        self.is_cycle: list[bool] = []
        edges = [e for e, c in fc.colors.items() if c == j]
        adj: dict[int, list[int]] = {}
        for u, v in edges:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        for start in sorted(adj):
            if start in self.component_of:
                continue
            cid = len(self.components)
            stack = [start]
            members = []
            while stack:
                x = stack.pop()
                if x in self.component_of:
                    continue
                self.component_of[x] = cid
                members.append(x)
                stack.extend(adj[x])
            members.sort()
            ends = [x for x in members if len(adj[x]) == 1]
            self.components.append(members)
            self.endpoints.append(ends)
            self.is_cycle.append(not ends)
