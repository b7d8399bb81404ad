"""Dynamic product Ax for a symmetric sparse A whose pattern is the engine's graph."""

from __future__ import annotations

from fractions import Fraction

from ..engines.base import Engine, edge_key
from ..graph import FlipTrace
from ._attach import require_simple_orientation


class MatVec:
    """Keeps s_i = sum of A_ij x_j over in-neighbors j of i.

    A query adds the out-neighbor terms and the diagonal, so it costs
    O(out-degree). Setting an off-diagonal entry to or from zero inserts or
    deletes the edge in the engine. Edges inserted directly on the engine
    get weight ``default_weight``.
    """

    def __init__(self, engine: Engine, default_weight=1):
        require_simple_orientation(engine)
        self.engine = engine
        n = engine.params.n_capacity
        self.n = n
        self.default_weight = Fraction(default_weight)
        self.entries: dict[tuple[int, int], Fraction] = {}
        self.diagonal: dict[int, Fraction] = {}
        self.x = [Fraction(0)] * n
        self.s = [Fraction(0)] * n
        engine.subscribe(self.apply)

    def entry(self, i: int, j: int) -> Fraction:
        if i == j:
            return self.diagonal.get(i, Fraction(0))
        return self.entries.get(edge_key(i, j), Fraction(0))

    def set_entry(self, i: int, j: int, value) -> None:
        """Set A_ij = A_ji = value."""
        value = Fraction(value)
        if i == j:
            if value:
                self.diagonal[i] = value
            else:
                self.diagonal.pop(i, None)
            return
        key = edge_key(i, j)
        old = self.entries.get(key, Fraction(0))
        if not old and value:
            self.entries[key] = value
            self.engine.insert_edge(i, j)
        elif old and not value:
            self.engine.delete_edge(i, j)
        elif old != value:
            self.entries[key] = value
            tail = i if self.engine.graph.mult(i, j) else j
            head = i + j - tail
            self.s[head] += (value - old) * self.x[tail]

    def set_x(self, j: int, value) -> None:
        value = Fraction(value)
        delta = value - self.x[j]
        self.x[j] = value
        if delta:
            for i in self.engine.graph.out_mult[j]:
                self.s[i] += self.entries[edge_key(i, j)] * delta

    def query(self, i: int) -> Fraction:
        """(Ax)_i, exactly."""
        total = self.s[i] + self.diagonal.get(i, Fraction(0)) * self.x[i]
        for j in self.engine.graph.out_mult[i]:
            total += self.entries[edge_key(i, j)] * self.x[j]
        return total

    def apply(self, trace: FlipTrace) -> None:
        entries, s, x = self.entries, self.s, self.x
        for kind, tail, head in trace.events:
            key = edge_key(tail, head)
            if kind == "add":
                a = entries.setdefault(key, self.default_weight)
                s[head] += a * x[tail]
            elif kind == "remove":
                s[head] -= entries.pop(key) * x[tail]
            else:
                a = entries[key]
                s[head] -= a * x[tail]
                s[tail] += a * x[head]
