"""Edge partition of a degenerate graph into the minimum number of linear forests.

For a graph of degeneracy k and maximum degree D with D >= 2k^2 - k, the
edge set splits into exactly ceil(D/2) linear forests, and this module
constructs such a partition:

1.  Pad the graph so every vertex has degree D or 1 (pendant vertices keep
    the degeneracy unchanged and are discarded from the final answer).
2.  Order vertices so that left-neighborhoods have size at most k, with all
    degree-D vertices before all degree-1 vertices.
3.  Reserve ``r = (D - k) // k`` disjoint right-neighbors ("representatives")
    for every degree-D vertex; reserved vertices keep one unit of headroom in
    every class until their owner is processed.
4.  Sweep the ordering.  At each degree-D vertex, first place the
    non-reserved right-edges greedily (each lands in a class untouched at the
    light endpoint), then exhaust the owner's remaining class budget on the
    reserved edges, and finally repair any monochromatic cycle with local
    recoloring/swaps, each of which strictly shrinks the set of cycles.

The same sweep with one extra class (``t = ceil((D+1)/2)``) works whenever
D >= 2k^2 - 2k ("relaxed" mode, matching the classic one-more-class bound).
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from enum import Enum

from .coloring import NIL, ForestColoring, edge_key
from .degeneracy import DegeneracyOrdering, degeneracy_ordering
from .errors import InternalContradictionError, PreconditionError
from .graph import Graph, connected_components, max_degree
from .sdr import SdrAssignment, compute_sdr
from .verify import verify_partition


class Mode(str, Enum):
    """Class-count target for :func:`decompose`.

    MINIMUM uses ``ceil(D/2)`` classes and requires ``D >= 2k^2 - k``.
    LAC uses ``ceil((D+1)/2)`` classes and requires ``D >= 2k^2 - 2k``.
    Forests (degeneracy 1) are handled directly in both modes with
    ``ceil(D/2)`` classes and no degree requirement.
    """

    MINIMUM = "minimum"
    LAC = "lac"


def required_max_degree(k: int, mode: Mode) -> int:
    """Smallest maximum degree for which ``mode`` is guaranteed at degeneracy ``k``."""
    if k <= 1:
        return 1
    return 2 * k * k - k if mode is Mode.MINIMUM else 2 * k * k - 2 * k


def class_count_for(delta: int, k: int, mode: Mode) -> int:
    if delta <= 0:
        return 0
    if mode is Mode.MINIMUM or k <= 1:
        return (delta + 1) // 2
    return delta // 2 + 1


@dataclass
class SolveStats:
    """Counters accumulated across all components of one decompose call."""

    components: int = 0
    pendants_added: int = 0
    repair_iterations: int = 0
    repairs_endpoint_free: int = 0
    repairs_owner_free: int = 0
    repairs_unreserved: int = 0
    wall_ms: float = 0.0


@dataclass
class DecomposeResult:
    """A complete edge coloring plus the parameters that shaped it.

    ``coloring`` maps each edge (canonical ``(u, v)``, ``u < v``) to a class
    in ``1..t``.  ``t`` is the number of classes made available, which for
    MINIMUM mode equals ``ceil(delta/2)`` exactly.
    """

    coloring: dict[tuple[int, int], int]
    t: int
    k: int
    delta: int
    mode: Mode
    n: int
    m: int
    isolated: list[int] = field(default_factory=list)
    stats: SolveStats = field(default_factory=SolveStats)


def regularize(g: Graph, target_delta: int | None = None) -> tuple[Graph, int]:
    """Pad ``g`` with pendant vertices so every degree is ``target_delta`` or 1.

    Every vertex with ``1 < degree < target_delta`` receives pendant
    neighbors up to the target.  Pendants get fresh ids starting at ``g.n``;
    the second return value is ``g.n`` itself, so an edge of the result is
    original exactly when both endpoints are below it.  Degeneracy is
    unchanged (pendants peel first).

    Requires a graph without isolated vertices and ``target_delta >= max
    degree >= 2``.
    """
    delta = max_degree(g)
    if target_delta is None:
        target_delta = delta
    if delta < 2:
        raise PreconditionError(f"regularize needs maximum degree >= 2, got {delta}")
    if target_delta < delta:
        raise PreconditionError(f"target degree {target_delta} is below maximum degree {delta}")
    n = g.n
    adj = [list(g.neighbors(v)) for v in range(n)]
    edges = {e for e in g.edges()}
    nxt = n
    for v in range(n):
        d = len(adj[v])
        if d == 0:
            raise PreconditionError(f"vertex {v} is isolated; strip isolated vertices first")
        if 1 < d < target_delta:
            for _ in range(target_delta - d):
                adj.append([v])
                adj[v].append(nxt)
                edges.add((v, nxt))
                nxt += 1
    return Graph._from_parts(adj, edges), n


def place_light_edge(fc: ForestColoring, x: int, y: int) -> int:
    """Color the uncolored edge xy into a class untouched at ``x`` where ``y``
    is not yet internal, returning the (smallest) class index used.

    Such a class exists whenever ``2*d(x) + d(y) <= 2*t + 2``, with degrees
    counting xy itself: summing ``2*cd(x, j) + cd(y, j)`` over all ``t``
    classes gives at most ``2t - 1``, so some class scores at most 1.  Only
    ``y`` can become internal in its class, and no cycle can form because
    ``x`` enters the class as a fresh vertex.
    """
    t = fc.t
    cd = fc._cd
    bx = x * t
    by = y * t
    for j in range(t):
        if cd[bx + j] == 0 and cd[by + j] <= 1:
            fc.assign(x, y, j)
            return j
    dx = fc.colored_degree(x) + 1
    dy = fc.colored_degree(y) + 1
    if 2 * dx + dy > 2 * t + 2:
        raise PreconditionError(
            f"edge {x}-{y} violates 2*d(x)+d(y) <= 2t+2: 2*{dx}+{dy} > {2 * t + 2}"
        )
    raise InternalContradictionError(
        f"no class for edge {x}-{y} although 2*{dx}+{dy} <= {2 * t + 2}"
    )


class SolverState:
    """Per-component sweep state over the padded graph.

    Exposes :meth:`process_vertex` so tests can drive the sweep one position
    at a time; :meth:`run` drives it to completion and projects the coloring
    back onto the component's original edges (still 0-based classes).
    """

    def __init__(
        self,
        g: Graph,
        base_ordering: DegeneracyOrdering,
        target_delta: int,
        t: int,
        mode: Mode,
        debug: bool = False,
        stats: SolveStats | None = None,
    ) -> None:
        k = base_ordering.k
        if k < 2:
            raise PreconditionError("sweep requires degeneracy >= 2; forests are paired directly")
        if target_delta < required_max_degree(k, mode):
            raise PreconditionError(
                f"mode {mode.value} needs maximum degree >= {required_max_degree(k, mode)} "
                f"at degeneracy {k}, got {target_delta}"
            )
        self.k = k
        self.delta = target_delta
        self.t = t
        self.mode = mode
        self.debug = debug
        self.stats = stats if stats is not None else SolveStats()

        self.g_star, self.n_orig = regularize(g, target_delta)
        self.stats.pendants_added += self.g_star.n - self.n_orig
        n_star = self.g_star.n

        # Reorder: degree-D vertices first (stable), then original degree-1
        # vertices, then pendants.  Left-degrees only shrink, so the ordering
        # still certifies degeneracy k, and every degree-1 vertex trails
        # every degree-D vertex as the sweep requires.
        highs: list[int] = []
        ones: list[int] = []
        for v in base_ordering.order:
            d = self.g_star.degree(v)
            if d == target_delta:
                highs.append(v)
            elif d == 1:
                ones.append(v)
            else:  # pragma: no cover - regularize guarantees {1, D}
                raise InternalContradictionError(f"vertex {v} has degree {d} after padding")
        order = highs + ones + list(range(self.n_orig, n_star))
        position = [0] * n_star
        for i, v in enumerate(order):
            position[v] = i
        self.ordering = DegeneracyOrdering(order, position, k)
        self.n_high = len(highs)

        self.sdr: SdrAssignment = compute_sdr(self.g_star, self.ordering, target_delta)
        if self.sdr.r < 1:
            raise InternalContradictionError(
                f"degree threshold admitted r={self.sdr.r}; arithmetic is broken"
            )
        self.fc = ForestColoring(n_star, t)
        # Owner position per reserved vertex (-1 when never reserved); a
        # vertex is "pending" while its owner lies ahead of the sweep, and
        # pending vertices must keep every class degree at most 1.
        self.reserved_owner_pos = [-1] * n_star
        for v, row in self.sdr.reps.items():
            pv = position[v]
            for u in row:
                self.reserved_owner_pos[u] = pv
        self._touched: list[int] = []

    # ------------------------------------------------------------------ sweep

    def run(self) -> dict[tuple[int, int], int]:
        # Positions past the degree-D block hold degree-1 vertices, whose
        # single edge is always colored from the other side: skip them.
        for i in range(self.n_high):
            self.process_vertex(i)
        if len(self.fc.colors) != self.g_star.edge_count:
            raise InternalContradictionError(
                f"sweep left {self.g_star.edge_count - len(self.fc.colors)} edges uncolored"
            )
        if self.debug:
            problems = self.fc.validate()
            if problems:
                raise InternalContradictionError("final state invalid: " + "; ".join(problems))
        n_orig = self.n_orig
        return {e: c for e, c in self.fc.colors.items() if e[1] < n_orig}

    def process_vertex(self, i: int) -> None:
        """Color every right-edge of the vertex at position ``i``.

        Degree-1 vertices are no-ops (their single edge is colored from the
        other side).  For degree-D vertices this adds exactly |N_R| edges.
        """
        g = self.g_star
        v = self.ordering.order[i]
        adj = g._adj[v]
        if len(adj) != self.delta:
            return
        position = self.ordering.position
        right = sorted(u for u in adj if position[u] > i)
        reps = self.sdr.reps_of(v)
        rep_set = set(reps)
        spare = [u for u in right if u not in rep_set]
        if self.debug:
            self._touched = [v] + right
        self._stage_light(v, spare)
        bad = self._stage_reserved(v, reps, rep_set)
        if bad:
            self._repair(v, reps, rep_set, spare, bad)
        if self.debug:
            self._check_pending_headroom(i)

    def _stage_light(self, v: int, spare: list[int]) -> None:
        """Place every non-reserved right-edge of ``v``.

        Equivalent to :func:`place_light_edge` per edge, with two shortcuts:
        classes already full at ``v`` are skipped once for the whole stage
        (degrees at ``v`` only grow here), and an endpoint with no colored
        edge yet (pendants, trailing degree-1 vertices) accepts any class, so
        no scan of its row is needed.
        """
        fc = self.fc
        t = fc.t
        cd = fc._cd
        total = fc._total
        base_v = v * t
        limit = 2 * t + 2
        ptr = 0
        for u in spare:
            if 2 * (total[u] + 1) + (total[v] + 1) > limit:
                raise InternalContradictionError(
                    f"edge {v}-{u} exceeds the placement budget; padding or "
                    f"reservation arithmetic is broken"
                )
            while ptr < t and cd[base_v + ptr] == 2:
                ptr += 1
            if ptr == t:
                raise InternalContradictionError(f"no open class at vertex {v}")
            if total[u] == 0:
                j = ptr
            else:
                bu = u * t
                j = -1
                for jj in range(ptr, t):
                    if cd[bu + jj] == 0 and cd[base_v + jj] <= 1:
                        j = jj
                        break
                if j < 0:
                    raise InternalContradictionError(
                        f"no class for edge {v}-{u}; placement guarantee failed"
                    )
            fc.assign(v, u, j)

    def _stage_reserved(self, v: int, reps: list[int], rep_set: set[int]) -> set[int]:
        """Color the reserved edges of ``v``, exhausting its class budget.

        At entry ``v`` has ``D - r`` colored edges, so its free/half class
        counts satisfy ``2*|free| + |half| = 2t - (D - r)``, which is ``r`` or
        ``r + 1`` in MINIMUM mode (``r+1`` or ``r+2`` in relaxed mode).  The
        reserved edges consume free classes twice, then half classes once, in
        ascending class order.  Returns the reserved vertices whose new edge
        closed a cycle.
        """
        fc = self.fc
        r = len(reps)
        if r != self.sdr.r:
            raise InternalContradictionError(f"owner {v} holds {r} != r={self.sdr.r} reserved")
        free, half, _ = fc.color_sets(v)
        budget = 2 * len(free) + len(half)
        lo, hi = (r, r + 1) if self.mode is Mode.MINIMUM else (r, r + 2)
        if not lo <= budget <= hi:
            raise InternalContradictionError(
                f"class budget {budget} at owner {v} outside [{lo}, {hi}]"
            )
        seq: list[int] = []
        for c in free:
            seq.append(c)
            seq.append(c)
        seq.extend(half)
        flagged: list[tuple[int, int]] = []
        for u, c in zip(reps, seq):
            if fc.would_close_cycle(c, v, u):
                flagged.append((u, c))
            fc.assign(v, u, c)
        bad: set[int] = set()
        for u, c in flagged:
            bad.add(u)
            # The cycle runs through both class-c edges at v; if the second
            # one is also reserved, it is on the same cycle.
            for z in fc.class_neighbors(v, c):
                if z != u and z in rep_set and fc.color_of(v, z) == c:
                    bad.add(z)
        return bad

    # ------------------------------------------------------------------ repair

    def _repair(
        self, v: int, reps: list[int], rep_set: set[int], spare: list[int], bad: set[int]
    ) -> None:
        """Drive the set of cycle-carrying reserved edges to empty.

        Each iteration recolors or swaps one reserved edge of ``v`` (in one
        case trading with a non-reserved edge) and must strictly shrink the
        bad set; the iteration count is hard-capped at ``r + 1``.
        """
        fc = self.fc
        cap = len(reps) + 1
        iters = 0
        while bad:
            iters += 1
            self.stats.repair_iterations += 1
            if iters > cap:
                raise InternalContradictionError(self._dump(v, reps, bad, "iteration cap hit"))
            w = min(bad)
            xi = fc.color_of(v, w)
            cycle = fc.cycle_containing(xi, v, w)
            if cycle is None:
                raise InternalContradictionError(self._dump(v, reps, bad, "tracked cycle vanished"))
            move = self._choose_repair_move(v, reps, rep_set, spare, w, xi)
            if move[0] == "recolor":
                fc.recolor(v, w, move[1])
            else:
                fc.swap_colors((v, w), (v, move[2]))
            new_bad = {
                u for u in reps if fc.cycle_containing(fc.color_of(v, u), v, u) is not None
            }
            if len(new_bad) >= len(bad):
                raise InternalContradictionError(
                    self._dump(v, reps, new_bad, f"move {move} did not shrink the cycle set")
                )
            bad = new_bad

    def _choose_repair_move(
        self, v: int, reps: list[int], rep_set: set[int], spare: list[int], w: int, xi: int
    ) -> tuple:
        """Pick the move that frees the reserved edge vw from its cycle.

        Degrees are examined net of the reserved edges at ``v`` (the state
        the budget argument reasons about).  Preference order:

        1. a class where ``w`` is untouched and ``v`` is not internal:
           recolor vw there, or swap with the reserved edge already holding
           that class;
        2. a class where ``v`` is untouched (net of reserved edges): swap vw
           with a reserved edge of that class, preferring the one adjacent to
           ``v`` on that class's path toward ``w`` so the cycle cannot close
           again;
        3. otherwise (possible only at degeneracy 2) swap vw with a
           non-reserved right-edge of ``v``.
        """
        fc = self.fc
        t = fc.t
        rep_count = [0] * t
        for u in reps:
            rep_count[fc.color_of(v, u)] += 1
        net_v = [fc.class_degree(v, j) - rep_count[j] for j in range(t)]

        for j in range(t):
            wd = fc.class_degree(w, j) - (1 if j == xi else 0)
            if wd == 0 and net_v[j] != 2:
                partners = [u for u in reps if u != w and fc.color_of(v, u) == j]
                self.stats.repairs_endpoint_free += 1
                if partners:
                    return ("swap", j, min(partners))
                return ("recolor", j)

        for j in range(t):
            if net_v[j] == 0 and j != xi:
                self.stats.repairs_owner_free += 1
                if rep_count[j] == 0:
                    # No edge at v carries j at all (only reachable with the
                    # relaxed budget): vw can simply move there, leaving v a
                    # leaf of class j, which cannot lie on a cycle.
                    return ("recolor", j)
                u = self._partner_on_path(v, w, j)
                if u is None:
                    u = min(x for x in reps if x != w and fc.color_of(v, x) == j)
                elif u not in rep_set or fc.color_of(v, u) != j:
                    raise InternalContradictionError(
                        self._dump(v, reps, {w}, f"path partner {u} is not reserved in class {j}")
                    )
                return ("swap", j, u)

        # Both pools empty forces degeneracy exactly 2 (the class budget at v
        # cannot cover r reserved edges otherwise), so a non-reserved trade
        # partner is available and safe: its only colored edge is vu.
        if self.k != 2:
            raise InternalContradictionError(
                self._dump(v, reps, {w}, f"unreserved trade reached at degeneracy {self.k}")
            )
        for u in spare:
            eta = fc.color_of(v, u)
            if eta is not None and eta != xi:
                self.stats.repairs_unreserved += 1
                return ("swap", eta, u)
        raise InternalContradictionError(
            self._dump(v, reps, {w}, "no unreserved right-edge outside the cycle class")
        )

    def _partner_on_path(self, v: int, w: int, j: int) -> int | None:
        """Walk class ``j`` from ``w``; if the walk reaches ``v``, return the
        vertex right before it, else None.  ``w`` has at most one class-``j``
        edge, so the walk direction is unique."""
        fc = self.fc
        nbrs = fc.class_neighbors(w, j)
        if not nbrs:
            return None
        prev, cur = w, nbrs[0]
        limit = fc.n + 1
        steps = 0
        while cur != v:
            nxt = fc._next_on_walk(j, cur, prev)
            if nxt == NIL:
                return None
            prev, cur = cur, nxt
            steps += 1
            if steps > limit:  # pragma: no cover - corruption guard
                raise InternalContradictionError(f"class {j} walk exceeded vertex count")
        return prev

    # ------------------------------------------------------------------ debug

    def _check_pending_headroom(self, i: int) -> None:
        """Every reserved vertex whose owner is still ahead must have class
        degrees <= 1.  Only vertices touched this step can have changed."""
        fc = self.fc
        t = fc.t
        for x in self._touched:
            if self.reserved_owner_pos[x] > i:
                bx = x * t
                for j in range(t):
                    if fc._cd[bx + j] > 1:
                        raise InternalContradictionError(
                            f"reserved vertex {x} became internal in class {j} "
                            f"before its owner (position {self.reserved_owner_pos[x]})"
                        )

    def _dump(self, v: int, reps: list[int], bad: set[int], reason: str) -> str:
        fc = self.fc
        lines = [
            f"repair failed at owner {v}: {reason}",
            f"  degeneracy={self.k} delta={self.delta} t={self.t} mode={self.mode.value}",
            f"  reserved={reps} bad={sorted(bad)}",
            f"  reserved colors={[fc.color_of(v, u) for u in reps]}",
            f"  owner class degrees={[fc.class_degree(v, j) for j in range(self.t)]}",
        ]
        return "\n".join(lines)


def _color_forest(g: Graph, t: int, out: dict[tuple[int, int], int]) -> None:
    """Pair the edges of a forest into ``ceil(max_degree/2) <= t`` classes.

    Any assignment keeping per-vertex class counts at 2 works: subgraphs of a
    forest are forests, so no cycles can arise.  Children cycle through the
    smallest classes with remaining capacity at the parent.
    """
    n = g.n
    seen = bytearray(n)
    by_degree = sorted(range(n), key=lambda v: (-g.degree(v), v))
    for root in by_degree:
        if seen[root] or g.degree(root) == 0:
            continue
        seen[root] = 1
        stack: list[tuple[int, int, int]] = [(root, -1, -1)]
        while stack:
            x, parent, pc = stack.pop()
            used = [0] * t
            if pc >= 0:
                used[pc] = 1
            c = 0
            for y in sorted(g.neighbors(x)):
                if y == parent:
                    continue
                while c < t and used[c] == 2:
                    c += 1
                if c == t:
                    raise InternalContradictionError(f"forest pairing ran out of classes at {x}")
                out[edge_key(x, y)] = c
                used[c] += 1
                seen[y] = 1
                stack.append((y, x, c))


def decompose(
    g: Graph,
    mode: Mode | str = Mode.MINIMUM,
    *,
    debug_checks: bool | None = None,
) -> DecomposeResult:
    """Partition the edges of ``g`` into ``t`` linear forests.

    ``t`` is ``ceil(delta/2)`` in MINIMUM mode (requires maximum degree
    ``delta >= 2k^2 - k`` for degeneracy ``k >= 2``) and ``ceil((delta+1)/2)``
    in LAC mode (requires ``delta >= 2k^2 - 2k``).  Forests need no degree
    threshold.  Components are processed independently against the global
    ``delta`` and ``t``; isolated vertices are ignored and reported.

    ``debug_checks`` enables expensive internal invariant scans plus a final
    independent verification; it defaults to the ``LINARB_DEBUG_ASSERT=1``
    environment switch.

    Raises :class:`PreconditionError` when the degree threshold fails, and
    :class:`InternalContradictionError` only on an implementation bug.
    """
    start = time.perf_counter()
    mode = Mode(mode)
    if debug_checks is None:
        debug_checks = os.environ.get("LINARB_DEBUG_ASSERT") == "1"
    stats = SolveStats()
    isolated = [v for v in range(g.n) if g.degree(v) == 0]
    delta = max_degree(g)
    if g.edge_count == 0:
        stats.wall_ms = (time.perf_counter() - start) * 1000.0
        return DecomposeResult({}, 0, 0, 0, mode, g.n, 0, isolated, stats)
    k = degeneracy_ordering(g).k
    if k >= 2:
        need = required_max_degree(k, mode)
        if delta < need:
            raise PreconditionError(
                f"{mode.value} mode requires maximum degree >= {need} at degeneracy {k}; "
                f"graph has {delta}"
            )
    t = class_count_for(delta, k, mode)
    coloring: dict[tuple[int, int], int] = {}
    for comp in connected_components(g):
        if len(comp) == 1:
            continue
        stats.components += 1
        local = {v: i for i, v in enumerate(comp)}
        sub = Graph(len(comp))
        for v in comp:
            lv = local[v]
            for u in g.neighbors(v):
                if u > v:
                    sub.add_edge(lv, local[u])
        base = degeneracy_ordering(sub)
        part: dict[tuple[int, int], int] = {}
        if base.k <= 1:
            _color_forest(sub, t, part)
        else:
            state = SolverState(sub, base, delta, t, mode, debug_checks, stats)
            part = state.run()
        for (a, b), c in part.items():
            coloring[edge_key(comp[a], comp[b])] = c + 1
    stats.wall_ms = (time.perf_counter() - start) * 1000.0
    result = DecomposeResult(coloring, t, k, delta, mode, g.n, g.edge_count, isolated, stats)
    if debug_checks:
        report = verify_partition(g, coloring, t)
        if not report.valid:
            raise InternalContradictionError(
                "decompose produced an invalid partition: "
                + "; ".join(str(x) for x in report.violations[:5])
            )
    return result
