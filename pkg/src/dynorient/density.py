"""Density monitoring on top of an engine: estimate, level sets, rounding."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .buckets import BucketList
from .engines.base import Engine, edge_key
from .graph import FlipTrace


class FenwickTree:
    """Prefix counts over degree values 0..size-1, grown on demand."""

    def __init__(self, size: int = 16):
        self._tree = [0] * (size + 1)

    def __len__(self) -> int:
        return len(self._tree) - 1

    def add(self, index: int, delta: int) -> None:
        if index >= len(self):
            self._grow(index + 1)
        i = index + 1
        tree = self._tree
        while i < len(tree):
            tree[i] += delta
            i += i & -i

    def prefix(self, index: int) -> int:
        """Sum over values 0..index inclusive."""
        i = min(index, len(self) - 1) + 1
        total = 0
        tree = self._tree
        while i > 0:
            total += tree[i]
            i -= i & -i
        return total

    def _grow(self, need: int) -> None:
        size = len(self)
        while size < need:
            size *= 2
        values = [self.prefix(i) - self.prefix(i - 1) for i in range(len(self))]
        self._tree = [0] * (size + 1)
        for i, v in enumerate(values):
            if v:
                self.add(i, v)


class DensityIndex:
    """Out-degrees of all vertices with count-above queries and ordered walks.

    A Fenwick tree over degree values answers "how many vertices have
    d+ >= t" in O(log D); a :class:`BucketList` keyed by degree threads the
    vertices in degree order so a level set is listed in time proportional
    to its size.
    """

    def __init__(self, degrees: list[int]):
        self.n = len(degrees)
        self.degree = list(degrees)
        self.counts = FenwickTree(max(16, max(degrees, default=0) + 1))
        self.order = BucketList()
        for v, d in enumerate(degrees):
            self.counts.add(d, 1)
            self.order.insert(v, d)

    @property
    def max_degree(self) -> int:
        return self.order.max_key() or 0

    def on_degree_change(self, v: int, old: int, new: int) -> None:
        if self.degree[v] != old:
            raise ValueError(f"vertex {v} has degree {self.degree[v]}, not {old}")
        self.degree[v] = new
        self.counts.add(old, -1)
        self.counts.add(new, 1)
        self.order.move(v, new)

    def count_at_least(self, t: int) -> int:
        if t <= 0:
            return self.n
        return self.n - self.counts.prefix(t - 1)

    def walk_at_least(self, t: int) -> list[int]:
        """Vertices with degree >= t, highest degree first."""
        out = []
        for key, v in self.order.items():
            if key < t:
                break
            out.append(v)
        return out


@dataclass
class LevelSetReport:
    """Result of a dense-subgraph extraction.

    ``sizes[i]`` is |T_i| for i = 0..k+1 and ``vertices`` the members of the
    returned level set, T_{k+1}; ``touched`` counts the vertices the walk
    visited.
    """

    k: int
    sizes: list[int]
    vertices: list[int]
    touched: int
    density_estimate: Fraction
    thresholds: list[int] = field(default_factory=list)

    def as_json(self) -> dict:
        return {
            "k": self.k,
            "sizes": self.sizes,
            "vertices": sorted(self.vertices),
            "density_estimate": str(self.density_estimate),
        }


class DensityMonitor:
    """Keeps a :class:`DensityIndex` in step with an engine's traces."""

    def __init__(self, engine: Engine):
        self.engine = engine
        self.params = engine.params
        self.index = DensityIndex(engine.graph.out_degree)
        engine.subscribe(self._apply)

    def _apply(self, trace: FlipTrace) -> None:
        deg = self.engine.graph.out_degree
        for v, delta in trace.degree_deltas().items():
            self.index.on_degree_change(v, deg[v] - delta, deg[v])

    def density_estimate(self) -> Fraction:
        """max out-degree of G^b divided by b."""
        return Fraction(self.index.max_degree, self.params.b)

    def level_thresholds(self, count: int) -> list[int]:
        """ceil(D a^-i) for i < count, with a = 1 + eta/b, as exact integers."""
        a = 1 + self.params.slack
        num, den = a.numerator, a.denominator
        top = self.index.max_degree
        # ceil(top * den^i / num^i)
        return [-(-top * den ** i // num ** i) for i in range(count)]

    def extract_dense_subgraph(self) -> LevelSetReport:
        """Return the level set T_{k+1}, where k is the first stalled level.

        T_i holds the vertices with d+ >= D (1 + eta/b)^-i. Its density is at
        least estimate / ((1 + gamma)(1 + eta/b)^k), because every arc leaving
        T_k ends inside T_{k+1}.
        """
        idx = self.index
        top = idx.max_degree
        estimate = self.density_estimate()
        if top == 0:
            return LevelSetReport(0, [], [], 0, estimate)
        grow = 1 + self.params.gamma
        g_num, g_den = grow.numerator, grow.denominator
        a = 1 + self.params.slack
        num, den = a.numerator, a.denominator
        thresholds = [top]
        sizes = [idx.count_at_least(top)]
        while True:
            i = len(sizes)
            t = -(-top * den ** i // num ** i)
            thresholds.append(t)
            sizes.append(idx.count_at_least(t))
            # |T_i| < (1 + gamma) |T_{i-1}|
            if sizes[i] * g_den < g_num * sizes[i - 1]:
                break
        k = len(sizes) - 2
        members = idx.walk_at_least(thresholds[k + 1])
        return LevelSetReport(k, sizes, members, len(members), estimate, thresholds)


class RoundedOrientation:
    """Simple orientation of G read off G^b: the majority direction of each edge.

    Ties (possible for even b) go from the smaller vertex id. Per-vertex
    rounded out-degrees are updated from traces.
    """

    def __init__(self, engine: Engine):
        self.engine = engine
        self.tail: dict[tuple[int, int], int] = {}
        self.out_degree = [0] * engine.params.n_capacity
        for e in engine.edges:
            self._set(e)
        engine.subscribe(self._apply)

    def _majority_tail(self, e: tuple[int, int]) -> int:
        u, v = e
        g = self.engine.graph
        return v if g.mult(v, u) > g.mult(u, v) else u

    def _set(self, e: tuple[int, int]) -> None:
        tail = self._majority_tail(e)
        self.tail[e] = tail
        self.out_degree[tail] += 1

    def _apply(self, trace: FlipTrace) -> None:
        touched = {edge_key(t, h) for _, t, h in trace.events}
        for e in touched:
            old = self.tail.pop(e, None)
            if old is not None:
                self.out_degree[old] -= 1
            if e in self.engine.edges:
                self._set(e)

    def direction(self, u: int, v: int) -> tuple[int, int]:
        e = edge_key(u, v)
        tail = self.tail[e]
        return (tail, e[0] + e[1] - tail)

    def max_out_degree(self) -> int:
        return max(self.out_degree)
