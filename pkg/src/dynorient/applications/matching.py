"""Maximal matching over an orientation: in-lists, out-lists, status notices."""

from __future__ import annotations

from ..engines.base import Engine
from ..graph import FlipTrace
from ._attach import require_simple_orientation


class MaximalMatching:
    """Maximal matching kept in step with a theta=1, b=1 engine.

    Each vertex holds its in-neighbors in two insertion-ordered lists,
    ``in_free`` and ``in_matched``. When a vertex changes status it tells
    its out-neighbors, which move it between those lists. A vertex freed by
    a deletion first takes the first free in-neighbor and otherwise asks
    its out-neighbors.
    """

    def __init__(self, engine: Engine):
        require_simple_orientation(engine)
        self.engine = engine
        n = engine.params.n_capacity
        self.mate: list[int | None] = [None] * n
        self.in_free: list[dict[int, None]] = [{} for _ in range(n)]
        self.in_matched: list[dict[int, None]] = [{} for _ in range(n)]
        self.proposals = 0
        self.notices = 0
        engine.subscribe(self.apply)

    def is_matched(self, v: int) -> int | None:
        """Partner of v, or None."""
        return self.mate[v]

    def size(self) -> int:
        return sum(1 for v, w in enumerate(self.mate) if w is not None and v < w)

    def pairs(self) -> list[tuple[int, int]]:
        return [(v, w) for v, w in enumerate(self.mate) if w is not None and v < w]

    def matched_vertices(self) -> list[int]:
        return [v for v, w in enumerate(self.mate) if w is not None]

    def _in_list(self, of: int, v: int) -> dict[int, None]:
        return self.in_matched[of] if self.mate[v] is not None else self.in_free[of]

    def _join(self, tail: int, head: int) -> None:
        self._in_list(head, tail)[tail] = None

    def _leave(self, tail: int, head: int) -> None:
        self._in_list(head, tail).pop(tail)

    def _set_mate(self, v: int, w: int | None) -> None:
        was_free = self.mate[v] is None
        self.mate[v] = w
        if was_free == (w is None):
            return
        src, dst = (self.in_free, self.in_matched) if w is not None else (self.in_matched, self.in_free)
        for x in self.engine.graph.out_mult[v]:
            self.notices += 1
            del src[x][v]
            dst[x][v] = None

    def _match(self, v: int, w: int) -> None:
        self._set_mate(v, w)
        self._set_mate(w, v)

    def _settle(self, v: int) -> None:
        """Match a free v to any free neighbor, if one exists."""
        if self.mate[v] is not None:
            return
        w = next(iter(self.in_free[v]), None)
        if w is not None:
            self._match(v, w)
            return
        for w in self.engine.graph.out_mult[v]:
            self.proposals += 1
            if self.mate[w] is None:
                self._match(v, w)
                return

    def apply(self, trace: FlipTrace) -> None:
        for kind, tail, head in trace.events:
            if kind == "add":
                self._join(tail, head)
            elif kind == "remove":
                self._leave(tail, head)
            else:
                self._leave(tail, head)
                self._join(head, tail)
        u, v = trace.u, trace.v
        if trace.op == "+":
            if self.mate[u] is None and self.mate[v] is None:
                self._match(u, v)
        elif self.mate[u] == v:
            self._set_mate(u, None)
            self._set_mate(v, None)
            self._settle(u)
            self._settle(v)
