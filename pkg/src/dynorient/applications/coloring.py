"""Delta+1 coloring over an orientation: palettes of in-free colors."""

from __future__ import annotations

from ..engines.base import Engine
from ..graph import FlipTrace
from ._attach import require_simple_orientation


class Coloring:
    """Proper coloring with color(v) in [0, degree(v)].

    ``taken[v][c]`` counts in-neighbors of v with color c and ``in_free[v]``
    lists the colors of [0, degree(v)] that no in-neighbor uses. Recoloring
    v masks the colors of its out-neighbors and takes the first in-free
    color left, so it costs O(out-degree).
    """

    def __init__(self, engine: Engine):
        require_simple_orientation(engine)
        self.engine = engine
        n = engine.params.n_capacity
        self.color = [0] * n
        self.degree = [0] * n
        self.taken: list[dict[int, int]] = [{} for _ in range(n)]
        self.in_free: list[dict[int, None]] = [{0: None} for _ in range(n)]
        self.recolors = 0
        self.last_recolored: list[int] = []
        engine.subscribe(self.apply)

    def color_of(self, v: int) -> int:
        return self.color[v]

    def _take(self, v: int, c: int) -> None:
        count = self.taken[v].get(c, 0)
        self.taken[v][c] = count + 1
        if count == 0:
            self.in_free[v].pop(c, None)

    def _release(self, v: int, c: int) -> None:
        count = self.taken[v][c] - 1
        if count:
            self.taken[v][c] = count
            return
        del self.taken[v][c]
        if c <= self.degree[v]:
            self.in_free[v][c] = None

    def _grow(self, v: int) -> None:
        d = self.degree[v] = self.degree[v] + 1
        if d not in self.taken[v]:
            self.in_free[v][d] = None

    def _shrink(self, v: int) -> None:
        d = self.degree[v]
        self.in_free[v].pop(d, None)
        self.degree[v] = d - 1

    def _recolor(self, v: int) -> None:
        out = self.engine.graph.out_mult[v]
        masked = {self.color[w] for w in out}
        c = next(c for c in self.in_free[v] if c not in masked)
        old = self.color[v]
        self.color[v] = c
        for w in out:
            self._release(w, old)
            self._take(w, c)
        self.recolors += 1
        self.last_recolored.append(v)

    def apply(self, trace: FlipTrace) -> None:
        color = self.color
        for kind, tail, head in trace.events:
            if kind == "add":
                self._grow(tail)
                self._grow(head)
                self._take(head, color[tail])
            elif kind == "remove":
                self._release(head, color[tail])
                self._shrink(tail)
                self._shrink(head)
            else:
                self._release(head, color[tail])
                self._take(tail, color[head])
        self.last_recolored = []
        u, v = trace.u, trace.v
        if trace.op == "+":
            if color[u] == color[v]:
                deg = self.engine.graph.out_degree
                self._recolor(min(u, v, key=lambda w: (deg[w], w)))
        else:
            # Both endpoints lose a palette slot; each recolors only if its
            # color fell outside it.
            for w in (u, v):
                if color[w] > self.degree[w]:
                    self._recolor(w)
