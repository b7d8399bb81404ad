"""Lazy engine: per-arc thresholds stand in for live out-degrees."""

from __future__ import annotations

from fractions import Fraction

from ..buckets import BucketList
from .base import Engine


class AmortizedEngine(Engine):
    """Every adjacency u->v carries a threshold phi(u, v), a stale d+(u).

    ``thresholds[u]`` orders N+(u) by phi so the smallest threshold is found
    in O(1); N-(v) is bucketed by the rank of phi(u, v). A vertex only
    notifies an out-neighbor when its degree has outgrown the threshold by a
    factor 1 + lambda, and a deletion only rescans in-neighbors whose
    threshold has gone stale.
    """

    name = "amortized"

    def __init__(self, params):
        super().__init__(params)
        self.phi: dict[tuple[int, int], int] = {}
        self.thresholds = [BucketList() for _ in range(params.n_capacity)]
        self.arc_inserts = 0
        self.arc_deletes = 0
        self.loop_iterations = 0
        self.delete_bucket_moves = 0

    def _adjacency_added(self, u: int, v: int) -> None:
        # A new adjacency starts at phi = d+(u); the default in-bucket key
        # written by add_arc is already rank(d+(u)).
        d = self.graph.out_degree[u]
        self.phi[(u, v)] = d
        self.thresholds[u].insert(v, d)

    def _adjacency_removed(self, u: int, v: int) -> None:
        del self.phi[(u, v)]
        self.thresholds[u].remove(v)

    def _set_phi(self, u: int, x: int, value: int) -> None:
        self.phi[(u, x)] = value
        self.thresholds[u].move(x, value)
        self._move_in(x, u, self.graph.rank(value))

    def _insert_arc(self, u: int, v: int) -> None:
        g, p = self.graph, self.params
        deg = g.out_degree
        self.arc_inserts += 1
        self._add(u, v)
        self._log("add", u, v)
        phi = self.phi
        while True:
            x = self.thresholds[u].first_min()
            if x is None or not p.reaches(deg[u], phi[(u, x)]):
                return
            self._trace.loop_iterations += 1
            self.loop_iterations += 1
            if deg[x] + 1 < deg[u]:
                self._remove(u, x)
                self._add(x, u)
                self._log("flip", u, x)
                u = x
            else:
                assert deg[u] > 0
                self._set_phi(u, x, deg[u])

    def _delete_arc(self, u: int, v: int) -> None:
        self.arc_deletes += 1
        moves_before = self._trace.bucket_moves
        self._remove(u, v)
        self._log("remove", u, v)
        while u is not None:
            u = self._scan_in(u)
        self.delete_bucket_moves += self._trace.bucket_moves - moves_before

    def _scan_in(self, u: int) -> int | None:
        """Scan N-(u) from the highest key; return the next chain vertex, if any."""
        g, p = self.graph, self.params
        deg = g.out_degree
        bucket = g.in_buckets[u]
        x = bucket.first_max()
        while x is not None:
            if p.exceeds(deg[x], deg[u]):
                self._add(u, x)
                self._remove(x, u)
                self._log("flip", x, u)
                return x
            if not p.stale(self.phi[(x, u)], deg[x]):
                return None
            key = bucket.key_of(x)
            nxt = bucket.next_in_bucket(x)
            self._set_phi(x, u, deg[x])
            x = nxt if nxt is not None else bucket.head_below(key, x)
        return None

    def threshold_report(self) -> dict[str, object]:
        """Check the two threshold inequalities on every arc u->z.

        ``degree_below_threshold``: d+(u) <= max{(1+lam) phi(u,z), floor(b/4)}.
        ``threshold_below_degree``: phi(u,z) <= max{(1+lam)^3 (d+(z)+theta), floor(b/4)}.
        ``threshold_below_degree_plus_one`` is the second test with theta
        replaced by max(theta, 1), which is what the insert guard
        d+(x)+1 < d+(u) actually supports when theta = 0.
        """
        g, p = self.graph, self.params
        deg = g.out_degree
        lam, theta, quarter = p.lam, p.theta, p.quarter
        cube = (1 + lam) ** 3
        first_low = first_high = first_loose = None
        worst_low = worst_high = Fraction(0)
        for (u, z), phi in self.phi.items():
            low = max((1 + lam) * phi, quarter)
            high = max(cube * (deg[z] + theta), quarter)
            loose = max(cube * (deg[z] + max(theta, 1)), quarter)
            worst_low = max(worst_low, deg[u] / low)
            worst_high = max(worst_high, phi / high if high else Fraction(phi))
            if deg[u] > low and first_low is None:
                first_low = (u, z)
            if phi > high and first_high is None:
                first_high = (u, z)
            if phi > loose and first_loose is None:
                first_loose = (u, z)
        return {
            "degree_below_threshold": first_low is None,
            "threshold_below_degree": first_high is None,
            "threshold_below_degree_plus_one": first_loose is None,
            "first_degree_violation": first_low,
            "first_threshold_violation": first_high,
            "worst_degree_ratio": worst_low,
            "worst_threshold_ratio": worst_high,
        }

    def audit(self) -> list[str]:
        problems = []
        g = self.graph
        for u, out in enumerate(g.out_mult):
            if set(self.thresholds[u]) != set(out):
                problems.append(f"threshold list of {u} disagrees with its out-neighbors")
        for (u, v), phi in self.phi.items():
            key = g.in_buckets[v].key_of(u)
            if key != g.rank(phi):
                problems.append(f"key of {u} in N-({v}) is {key}, rank(phi) is {g.rank(phi)}")
            if self.thresholds[u].key_of(v) != phi:
                problems.append(f"threshold list of {u} holds a stale phi for {v}")
        return problems
