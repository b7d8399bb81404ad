"""Forest decomposition from out-edge slots, each pseudoforest split in two."""

from __future__ import annotations

from ..engines.base import Engine
from ..graph import FlipTrace
from ._attach import require_simple_orientation


class ForestPartition:
    """The i-th out-edge of every vertex goes to pseudoforest S_i.

    Each S_i is split into halves 0 and 1: a newly placed arc t->h goes to
    the half not holding h's own arc in S_i. A directed cycle in S_i then
    always has its last-placed arc in the other half from its successor, so
    both halves stay acyclic. Removing an arc moves the tail's last slot
    into the hole, and the moved arc is placed afresh.
    """

    def __init__(self, engine: Engine):
        require_simple_orientation(engine)
        self.engine = engine
        n = engine.params.n_capacity
        self.slots: list[list[int]] = [[] for _ in range(n)]
        self.slot_of: dict[tuple[int, int], int] = {}
        self.half: dict[tuple[int, int], int] = {}
        self.moves = 0
        engine.subscribe(self.apply)

    def _place(self, tail: int, head: int, i: int) -> None:
        self.slot_of[(tail, head)] = i
        theirs = self.slots[head]
        other = self.half[(head, theirs[i])] if i < len(theirs) else 1
        self.half[(tail, head)] = 1 - other

    def _add(self, tail: int, head: int) -> None:
        mine = self.slots[tail]
        mine.append(head)
        self._place(tail, head, len(mine) - 1)

    def _remove(self, tail: int, head: int) -> None:
        i = self.slot_of.pop((tail, head))
        del self.half[(tail, head)]
        mine = self.slots[tail]
        last = mine.pop()
        if last != head:
            mine[i] = last
            self.moves += 1
            self._place(tail, last, i)

    def apply(self, trace: FlipTrace) -> None:
        for kind, tail, head in trace.events:
            if kind == "add":
                self._add(tail, head)
            elif kind == "remove":
                self._remove(tail, head)
            else:
                self._remove(tail, head)
                self._add(head, tail)

    def forest_of(self, u: int, v: int) -> tuple[int, int]:
        """(pseudoforest index, half) of edge {u, v}."""
        arc = (u, v) if (u, v) in self.slot_of else (v, u)
        return self.slot_of[arc], self.half[arc]

    def assignment(self) -> dict[tuple[int, int], tuple[int, int]]:
        return {arc: (i, self.half[arc]) for arc, i in self.slot_of.items()}

    def forest_count(self) -> int:
        """Number of nonempty forests (halves of pseudoforests)."""
        return len(set(self.assignment().values()))
