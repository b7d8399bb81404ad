"""The oriented multigraph G^b, update traces, and invariant checkers."""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .buckets import BucketList
from .params import Parameters, RankTable


class MissingArcError(KeyError):
    """remove_arc was asked for an arc with multiplicity 0."""


class ArcEvent(NamedTuple):
    """One arc-level change. ``kind`` is ``"add"``, ``"remove"`` or ``"flip"``.

    A flip turns one copy of ``tail -> head`` into ``head -> tail``.
    """

    kind: str
    tail: int
    head: int


@dataclass
class FlipTrace:
    """Everything one edge insertion or deletion did to the orientation."""

    op: str
    u: int
    v: int
    events: list[ArcEvent] = field(default_factory=list)
    chain_length: int = 0
    arcs_touched: int = 0
    bucket_moves: int = 0
    cursor_advances: int = 0
    loop_iterations: int = 0

    @property
    def recourse(self) -> int:
        """Number of reoriented arc copies."""
        return sum(1 for e in self.events if e.kind == "flip")

    def degree_deltas(self) -> dict[int, int]:
        """Net out-degree change per vertex, omitting zeros."""
        delta: dict[int, int] = {}
        for kind, tail, head in self.events:
            if kind == "add":
                delta[tail] = delta.get(tail, 0) + 1
            elif kind == "remove":
                delta[tail] = delta.get(tail, 0) - 1
            else:
                delta[tail] = delta.get(tail, 0) - 1
                delta[head] = delta.get(head, 0) + 1
        return {v: d for v, d in delta.items() if d}

    def replay(self, counts: dict[tuple[int, int], int]) -> dict[tuple[int, int], int]:
        """Apply the events to an arc-count snapshot, returning a new one."""
        out = dict(counts)

        def bump(u: int, v: int, by: int) -> None:
            c = out.get((u, v), 0) + by
            if c < 0:
                raise MissingArcError((u, v))
            if c:
                out[(u, v)] = c
            else:
                out.pop((u, v), None)

        for kind, tail, head in self.events:
            if kind == "add":
                bump(tail, head, 1)
            elif kind == "remove":
                bump(tail, head, -1)
            else:
                bump(tail, head, -1)
                bump(head, tail, 1)
        return out


class OrientedMultigraph:
    """Arc counts of G^b with per-vertex out-degrees and in-neighbor buckets.

    ``out_mult[u]`` maps each out-neighbor v to c(u->v) >= 1, so it doubles as
    N+(u). ``in_buckets[v]`` holds N-(v); the key of a member is chosen by
    the engine and defaults to the member's rank at the time it joins.
    """

    def __init__(self, params: Parameters):
        n = params.n_capacity
        self.params = params
        self.n = n
        self.rank = RankTable(params.lam)
        self.out_degree = [0] * n
        self.out_mult: list[dict[int, int]] = [{} for _ in range(n)]
        self.in_buckets = [BucketList() for _ in range(n)]

    def mult(self, u: int, v: int) -> int:
        return self.out_mult[u].get(v, 0)

    def add_arc(self, u: int, v: int) -> bool:
        """Add one copy of u->v. Returns True when v is a new out-neighbor."""
        self.out_degree[u] += 1
        out = self.out_mult[u]
        c = out.get(v, 0)
        out[v] = c + 1
        if c == 0:
            self.in_buckets[v].insert(u, self.rank(self.out_degree[u]))
            return True
        return False

    def remove_arc(self, u: int, v: int) -> bool:
        """Remove one copy of u->v. Returns True when v stops being an out-neighbor."""
        out = self.out_mult[u]
        c = out.get(v, 0)
        if c == 0:
            raise MissingArcError(f"no arc {u}->{v}")
        self.out_degree[u] -= 1
        if c == 1:
            del out[v]
            self.in_buckets[v].remove(u)
            return True
        out[v] = c - 1
        return False

    def first_max_in_neighbor(self, u: int) -> int | None:
        return self.in_buckets[u].first_max()

    def arcs(self) -> Iterator[tuple[int, int, int]]:
        """``(u, v, c(u->v))`` for every ordered pair with at least one arc."""
        for u, out in enumerate(self.out_mult):
            for v, c in out.items():
                yield u, v, c

    def snapshot(self) -> dict[tuple[int, int], int]:
        return {(u, v): c for u, v, c in self.arcs()}

    def max_out_degree(self) -> int:
        return max(self.out_degree)


@dataclass(frozen=True)
class InvariantReport:
    """Outcome of an invariant walk.

    ``worst_ratio`` is the largest d+(u) / bound(u->v) seen (0 for an empty
    graph); ``violation`` names the first offending arc, if any.
    """

    ok: bool
    worst_ratio: Fraction
    violation: tuple[int, int] | None = None
    checked: int = 0


def _all_arcs(g: OrientedMultigraph) -> Iterator[tuple[int, Iterable[int]]]:
    for u, out in enumerate(g.out_mult):
        if out:
            yield u, out


def _arcs_around(g: OrientedMultigraph, vertices: Iterable[int]) -> Iterator[tuple[int, Iterable[int]]]:
    for x in vertices:
        if g.out_mult[x]:
            yield x, g.out_mult[x]
        for w in g.in_buckets[x]:
            yield w, (x,)


def _walk(
    g: OrientedMultigraph,
    params: Parameters,
    floor_clause: int,
    groups: Iterable[tuple[int, Iterable[int]]] | None = None,
) -> InvariantReport:
    # With eta/b = P/Q the bound on arc u->v is B/Q where
    # B = max((Q+P) d+(v) + 2 theta Q, floor_clause Q); compare d+(u) Q against B.
    P, Q = params.slack.numerator, params.slack.denominator
    QP, add, floor_q = Q + P, 2 * params.theta * Q, floor_clause * Q
    deg = g.out_degree
    worst_num, worst_den = 0, 1
    violation = None
    checked = 0
    for u, out in groups if groups is not None else _all_arcs(g):
        num = deg[u] * Q
        for v in out:
            checked += 1
            bound = max(QP * deg[v] + add, floor_q)
            if bound == 0:
                # theta = 0 with d+(v) = 0 and no max clause: any arc violates.
                if violation is None:
                    violation = (u, v)
                continue
            if num * worst_den > worst_num * bound:
                worst_num, worst_den = num, bound
            if num > bound and violation is None:
                violation = (u, v)
    return InvariantReport(violation is None, Fraction(worst_num, worst_den), violation,
                           checked)


def check_invariant_theta(g: OrientedMultigraph, params: Parameters) -> InvariantReport:
    """Check d+(u) <= (1 + eta/b) d+(v) + 2 theta on every arc u->v."""
    return _walk(g, params, 0)


def check_invariant_theta_prime(g: OrientedMultigraph, params: Parameters) -> InvariantReport:
    """Check d+(u) <= max{(1 + eta/b) d+(v) + 2 theta, floor(b/2)} on every arc."""
    return _walk(g, params, params.half)


def check_theta_prime_around(
    g: OrientedMultigraph, params: Parameters, vertices: Iterable[int]
) -> InvariantReport:
    """Invariant theta' on the arcs entering or leaving ``vertices`` only.

    After an arc operation only the out-degrees of the vertices it touched
    changed, so this is as strong as a full walk at a fraction of the cost.
    """
    return _walk(g, params, params.half, _arcs_around(g, vertices))
