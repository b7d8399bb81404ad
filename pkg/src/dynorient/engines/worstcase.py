"""Round-robin engine with perceived ranks and bounded work per update."""

from __future__ import annotations

from fractions import Fraction

from .base import Engine


class RoundRobinRing:
    """Circular list over a vertex's out-neighbors with a persistent cursor.

    New members go immediately before the cursor, so they are visited last.
    Removing the member under the cursor advances the cursor first.
    """

    __slots__ = ("_next", "_prev", "cursor")

    def __init__(self):
        self._next: dict[int, int] = {}
        self._prev: dict[int, int] = {}
        self.cursor: int | None = None

    def __len__(self) -> int:
        return len(self._next)

    def __contains__(self, v: int) -> bool:
        return v in self._next

    def add(self, v: int) -> None:
        c = self.cursor
        if c is None:
            self._next[v] = self._prev[v] = v
            self.cursor = v
            return
        p = self._prev[c]
        self._next[p] = v
        self._prev[v] = p
        self._next[v] = c
        self._prev[c] = v

    def discard(self, v: int) -> None:
        nxt = self._next.pop(v)
        prv = self._prev.pop(v)
        if nxt == v:
            self.cursor = None
            return
        self._next[prv] = nxt
        self._prev[nxt] = prv
        if self.cursor == v:
            self.cursor = nxt

    def advance(self) -> int:
        """Return the member under the cursor and step past it."""
        v = self.cursor
        self.cursor = self._next[v]
        return v

    def order(self) -> list[int]:
        """Members in visiting order starting at the cursor."""
        out = []
        v = self.cursor
        for _ in range(len(self._next)):
            out.append(v)
            v = self._next[v]
        return out


class WorstCaseEngine(Engine):
    """Buckets keyed by perceived ranks, refreshed ceil(2/lambda) at a time.

    The in-bucket key of u in N-(v) is v's copy r_v(u) of u's rank. A
    vertex whose out-degree changed refreshes its copy at the next
    ``scan_width`` out-neighbors in ring order; flip tests always read true
    degrees.

    An arc written in the middle of an insert chain stores its tail's rank
    while that tail is one arc heavier than it ends up. Such entries are
    rewritten once the arc-level operation is over, so every stored copy
    reflects a settled degree.
    """

    name = "worstcase"

    def __init__(self, params):
        super().__init__(params)
        n = params.n_capacity
        self.rings = [RoundRobinRing() for _ in range(n)]
        self.scan = params.scan_width
        # Instrumentation for the drift bound: (u, v) -> (op id, d+(u)) at the
        # last time r_v(u) was written.
        self._written: dict[tuple[int, int], tuple[int, int]] = {}
        self._pre: dict[int, int] = {}
        self._fresh: list[tuple[int, int]] = []
        self.refreshes = 0
        self.drift_violations: list[tuple[int, int, int, int]] = []
        self._worst_drift = (0, 1)

    def _adjacency_added(self, u: int, v: int) -> None:
        self.rings[u].add(v)
        self._written[(u, v)] = (self._op, self.graph.out_degree[u])
        self._fresh.append((u, v))

    def _adjacency_removed(self, u: int, v: int) -> None:
        self.rings[u].discard(v)
        del self._written[(u, v)]

    def _add(self, u: int, v: int) -> None:
        self._pre.setdefault(u, self.graph.out_degree[u])
        super()._add(u, v)

    def _remove(self, u: int, v: int) -> None:
        self._pre.setdefault(u, self.graph.out_degree[u])
        super()._remove(u, v)

    def _insert_arc(self, u: int, v: int) -> None:
        g, p = self.graph, self.params
        deg = g.out_degree
        self._pre.clear()
        self._add(u, v)
        self._log("add", u, v)
        frames = []
        while True:
            ring = self.rings[u]
            visited = []
            target = None
            for _ in range(min(self.scan, len(ring))):
                x = ring.advance()
                visited.append(x)
                if p.exceeds(deg[u], deg[x]):
                    target = x
                    break
            self._trace.cursor_advances += len(visited)
            if target is None:
                frames.append((u, visited))
                break
            self._remove(u, target)
            self._add(target, u)
            self._log("flip", u, target)
            frames.append((u, visited))
            u = target
        for w, visited in frames:
            self._refresh(w, visited)
        self._settle()

    def _delete_arc(self, u: int, v: int) -> None:
        g, p = self.graph, self.params
        deg = g.out_degree
        self._pre.clear()
        self._remove(u, v)
        self._log("remove", u, v)
        while True:
            x = g.in_buckets[u].first_max()
            if x is not None and p.exceeds(deg[x], deg[u]):
                self._add(u, x)
                self._remove(x, u)
                self._log("flip", x, u)
                u = x
                continue
            ring = self.rings[u]
            visited = [ring.advance() for _ in range(min(self.scan, len(ring)))]
            self._trace.cursor_advances += len(visited)
            self._refresh(u, visited)
            break
        self._settle()

    def _refresh(self, u: int, targets: list[int]) -> None:
        g = self.graph
        d = g.out_degree[u]
        r = g.rank(d)
        out = g.out_mult[u]
        written = self._written
        for x in targets:
            if x not in out:
                continue
            op, then = written[(u, x)]
            if op != self._op:
                self._check_drift(u, x, then, self._pre.get(u, d))
            written[(u, x)] = (self._op, d)
            self._move_in(x, u, r)
            self.refreshes += 1

    def _check_drift(self, u: int, x: int, then: int, before: int) -> None:
        # Degree at the start of this arc operation against the degree at the
        # previous write of r_x(u); allowed drift is lambda/2 relative.
        change = abs(before - then)
        if not change:
            return
        num, den = self._worst_drift
        if change * den > num * then:
            self._worst_drift = (change, then)
        lam = self.params.lam
        if 2 * change * lam.denominator > lam.numerator * then:
            self.drift_violations.append((u, x, then, before))

    @property
    def worst_drift(self) -> Fraction:
        """Largest relative change of d+(u) seen between two writes of r_x(u)."""
        return Fraction(*self._worst_drift)

    def _settle(self) -> None:
        g = self.graph
        for u, v in self._fresh:
            if v in g.out_mult[u]:
                d = g.out_degree[u]
                self._written[(u, v)] = (self._op, d)
                self._move_in(v, u, g.rank(d))
        self._fresh.clear()

    def perceived_rank_gap(self) -> int:
        """Largest |r_v(u) - r(u)| over all stored copies."""
        g = self.graph
        worst = 0
        for bucket in g.in_buckets:
            for key, u in bucket.items():
                gap = abs(key - g.rank(g.out_degree[u]))
                if gap > worst:
                    worst = gap
        return worst

    def audit(self) -> list[str]:
        problems = []
        gap = self.perceived_rank_gap()
        if gap > 1:
            problems.append(f"perceived rank off by {gap}")
        if self.drift_violations:
            u, x, then, before = self.drift_violations[0]
            problems.append(
                f"drift of d+({u}) between refreshes at {x}: {then} -> {before}"
            )
        g = self.graph
        for u, ring in enumerate(self.rings):
            if set(ring.order()) != set(g.out_mult[u]):
                problems.append(f"ring of {u} disagrees with its out-neighbors")
        return problems

    def step_budget_report(self) -> dict[str, int]:
        """Counters of the most recent update."""
        t = self.last_trace
        if t is None:
            return {"arcs_touched": 0, "bucket_moves": 0, "chain_length": 0,
                    "cursor_advances": 0}
        return {
            "arcs_touched": t.arcs_touched,
            "bucket_moves": t.bucket_moves,
            "chain_length": t.chain_length,
            "cursor_advances": t.cursor_advances,
        }
