"""Reference engine: exact ranks, full out-neighborhood scans."""

from __future__ import annotations

from .base import Engine


class BasicEngine(Engine):
    """Insert picks the minimum-degree out-neighbor; delete the top in-bucket.

    In-bucket keys are true ranks. Only the vertex where a chain ends changes
    its out-degree, so only it rekeys itself everywhere. Every other vertex of
    an insert chain rekeys just the arc it gained, whose key was written
    while its degree was one too high.
    """

    name = "basic"

    def _insert_arc(self, u: int, v: int) -> None:
        g, p = self.graph, self.params
        deg = g.out_degree
        self._add(u, v)
        self._log("add", u, v)
        gained = [(u, v)]
        while True:
            x = min(g.out_mult[u], key=lambda w: (deg[w], w))
            if p.exceeds(deg[u], deg[x]):
                self._remove(u, x)
                self._add(x, u)
                self._log("flip", u, x)
                gained.append((x, u))
                u = x
                continue
            self._refresh(u)
            break
        for x, w in gained:
            if w in g.out_mult[x]:
                self._move_in(w, x, g.rank(deg[x]))

    def _delete_arc(self, u: int, v: int) -> None:
        g, p = self.graph, self.params
        deg = g.out_degree
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
            self._refresh(u)
            break

    def _refresh(self, u: int) -> None:
        g = self.graph
        r = g.rank(g.out_degree[u])
        for w in g.out_mult[u]:
            self._move_in(w, u, r)

    def audit(self) -> list[str]:
        g = self.graph
        problems = []
        for v, bucket in enumerate(g.in_buckets):
            for key, w in bucket.items():
                want = g.rank(g.out_degree[w])
                if key != want:
                    problems.append(f"key of {w} in N-({v}) is {key}, rank is {want}")
        return problems
