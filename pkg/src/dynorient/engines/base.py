"""Edge-level dispatch shared by all engines."""

from __future__ import annotations

from collections.abc import Callable

from ..graph import ArcEvent, FlipTrace, OrientedMultigraph
from ..params import Parameters


class DuplicateEdgeError(ValueError):
    """The edge is already present in G."""


class MissingEdgeError(KeyError):
    """The edge is not present in G."""


class CapacityError(ValueError):
    """A vertex id lies outside [0, n_capacity) or the edge is a self-loop."""


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Engine:
    """Maintains an orientation of G^b under edge insertions and deletions.

    Subclasses implement the arc-level ``_insert_arc`` and ``_delete_arc``.
    Each public update returns a :class:`FlipTrace` and hands it to every
    subscriber.
    """

    name = "engine"

    def __init__(self, params: Parameters):
        self.params = params
        self.graph = OrientedMultigraph(params)
        self.edges: set[tuple[int, int]] = set()
        self.total_flips = 0
        self.updates = 0
        self.last_trace: FlipTrace | None = None
        self._listeners: list[Callable[[FlipTrace], None]] = []
        self._arc_hooks: list[Callable[[list[ArcEvent]], None]] = []
        self._trace: FlipTrace = FlipTrace("", 0, 0)
        self._op = 0

    def subscribe(self, listener: Callable[[FlipTrace], None]) -> None:
        self._listeners.append(listener)

    def subscribe_arc_ops(self, hook: Callable[[list[ArcEvent]], None]) -> None:
        """Call ``hook`` with the events of every arc-level operation as it ends.

        Between two such calls G^b is in an intermediate state of an edge
        update; this is where Invariant theta' has to hold.
        """
        self._arc_hooks.append(hook)

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.edges

    def _check_pair(self, u: int, v: int) -> None:
        n = self.params.n_capacity
        if not (0 <= u < n and 0 <= v < n):
            raise CapacityError(f"vertex outside [0, {n}): {u}, {v}")
        if u == v:
            raise CapacityError(f"self-loop at {u}")

    def insert_edge(self, u: int, v: int) -> FlipTrace:
        """Insert {u, v} into G, adding b arcs to G^b.

        Each copy is oriented away from the endpoint of smaller current
        out-degree, ties going u->v.
        """
        self._check_pair(u, v)
        key = edge_key(u, v)
        if key in self.edges:
            raise DuplicateEdgeError(f"edge {key} already present")
        trace = self._trace = FlipTrace("+", u, v)
        deg = self.graph.out_degree
        for _ in range(self.params.b):
            if deg[u] <= deg[v]:
                self._arc_op(self._insert_arc, u, v)
            else:
                self._arc_op(self._insert_arc, v, u)
        self.edges.add(key)
        return self._finish(trace)

    def delete_edge(self, u: int, v: int) -> FlipTrace:
        """Delete {u, v} from G, removing its b arcs from G^b."""
        self._check_pair(u, v)
        key = edge_key(u, v)
        if key not in self.edges:
            raise MissingEdgeError(f"edge {key} not present")
        trace = self._trace = FlipTrace("-", u, v)
        g = self.graph
        for _ in range(self.params.b):
            if g.mult(u, v):
                self._arc_op(self._delete_arc, u, v)
            else:
                self._arc_op(self._delete_arc, v, u)
        self.edges.discard(key)
        return self._finish(trace)

    def _finish(self, trace: FlipTrace) -> FlipTrace:
        self.updates += 1
        self.total_flips += trace.recourse
        self.last_trace = trace
        for listener in self._listeners:
            listener(trace)
        return trace

    def _arc_op(self, fn, u: int, v: int) -> None:
        self._op += 1
        before = len(self._trace.events)
        fn(u, v)
        flips = len(self._trace.events) - before - 1
        if flips > self._trace.chain_length:
            self._trace.chain_length = flips
        if self._arc_hooks:
            events = self._trace.events[before:]
            for hook in self._arc_hooks:
                hook(events)

    # Primitive wrappers: every arc change goes through these so traces and
    # subclass bookkeeping stay in step with the graph.

    def _add(self, u: int, v: int) -> None:
        self._trace.arcs_touched += 1
        if self.graph.add_arc(u, v):
            self._adjacency_added(u, v)

    def _remove(self, u: int, v: int) -> None:
        self._trace.arcs_touched += 1
        if self.graph.remove_arc(u, v):
            self._adjacency_removed(u, v)

    def _log(self, kind: str, tail: int, head: int) -> None:
        self._trace.events.append(ArcEvent(kind, tail, head))

    def _adjacency_added(self, u: int, v: int) -> None:
        pass

    def _adjacency_removed(self, u: int, v: int) -> None:
        pass

    def _insert_arc(self, u: int, v: int) -> None:
        raise NotImplementedError

    def _delete_arc(self, u: int, v: int) -> None:
        raise NotImplementedError

    def _move_in(self, owner: int, member: int, key: int) -> None:
        self._trace.bucket_moves += self.graph.in_buckets[owner].move(member, key)

    def audit(self) -> list[str]:
        """Engine-specific structural checks; returns problem descriptions."""
        return []
