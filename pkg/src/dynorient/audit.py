"""Run-time auditing: invariant checks and oracle comparisons after each update."""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction

from . import oracles
from .applications import Coloring, ForestPartition, MatVec, MaximalMatching
from .density import DensityMonitor, RoundedOrientation
from .engines import AmortizedEngine, Engine
from .graph import (
    ArcEvent,
    FlipTrace,
    check_invariant_theta,
    check_invariant_theta_prime,
    check_theta_prime_around,
)

LEVELS = ("off", "invariants", "full")


def chain_envelope(params, max_degree: int) -> float:
    """Allowed chain length: 4 / lambda * log2(max_degree + 2) + 16."""
    return 4 / params.lam * math.log2(max_degree + 2) + 16


class Overlays:
    """The four application overlays on one engine."""

    def __init__(self, engine: Engine):
        self.matching = MaximalMatching(engine)
        self.coloring = Coloring(engine)
        self.forests = ForestPartition(engine)
        self.matvec = MatVec(engine)


class Auditor:
    """Checks an engine's guarantees as it runs and collects violations.

    ``invariants`` checks Invariant theta' after every arc operation (on
    the arcs it touched) and Invariants theta and theta' on the whole graph
    after every edge update. ``full`` adds the engine's own audit, the
    chain-length envelope, the density and extraction brackets against the
    exact density (while at most ``oracles.MAX_EXHAUSTIVE`` vertices are
    active), rounding, and the application overlays when present.
    """

    def __init__(self, engine: Engine, level: str = "full",
                 overlays: Overlays | None = None,
                 monitor: DensityMonitor | None = None):
        if level not in LEVELS:
            raise ValueError(f"audit level must be one of {LEVELS}, got {level!r}")
        self.engine = engine
        self.params = engine.params
        self.level = level
        self.overlays = overlays
        self.violations: list[str] = []
        self.checks: Counter[str] = Counter()
        self.oracle_skips = 0
        self._max_degree = 0
        self.monitor = monitor
        self.rounded = None
        if level == "off":
            return
        engine.subscribe_arc_ops(self._after_arc)
        if level == "full":
            if self.monitor is None:
                self.monitor = DensityMonitor(engine)
            self.rounded = RoundedOrientation(engine)

    @property
    def ok(self) -> bool:
        return not self.violations

    def _fail(self, what: str) -> None:
        self.violations.append(what)

    def _after_arc(self, events: list[ArcEvent]) -> None:
        touched = {x for _, tail, head in events for x in (tail, head)}
        self.checks["theta_prime_arc"] += 1
        report = check_theta_prime_around(self.engine.graph, self.params, touched)
        if not report.ok:
            self._fail(f"invariant theta' broken on arc {report.violation} mid-update")

    def after_update(self, trace: FlipTrace) -> list[str]:
        """Run the configured checks; return the violations this update added."""
        if self.level == "off":
            return []
        start = len(self.violations)
        g, p = self.engine.graph, self.params
        for name, check in (("theta", check_invariant_theta),
                            ("theta_prime", check_invariant_theta_prime)):
            self.checks[name] += 1
            report = check(g, p)
            if not report.ok:
                self._fail(f"invariant {name} broken on arc {report.violation}")
        if self.level == "full":
            self._full(trace)
        return self.violations[start:]

    def _full(self, trace: FlipTrace) -> None:
        engine, g, p = self.engine, self.engine.graph, self.params
        for problem in engine.audit():
            self._fail(problem)
        self.checks["engine"] += 1

        top = g.max_out_degree()
        envelope = chain_envelope(p, max(top, self._max_degree))
        self._max_degree = top
        self.checks["chain"] += 1
        if trace.chain_length > envelope:
            self._fail(f"chain length {trace.chain_length} above envelope {envelope:.1f}")

        if isinstance(engine, AmortizedEngine):
            self.checks["thresholds"] += 1
            report = engine.threshold_report()
            if not report["degree_below_threshold"]:
                self._fail(f"degree above threshold on arc {report['first_degree_violation']}")
            if not report["threshold_below_degree_plus_one"]:
                self._fail(f"threshold too far above degree on arc "
                           f"{report['first_threshold_violation']}")

        self.checks["rounding"] += 1
        half_up = -(-p.b // 2)
        if self.rounded.max_out_degree() * half_up > top:
            self._fail(f"rounded out-degree {self.rounded.max_out_degree()} above "
                       f"{top}/{half_up}")

        self._density(top)
        if self.overlays is not None:
            self._overlays()

    def _density(self, top: int) -> None:
        engine, p = self.engine, self.params
        edges = sorted(engine.edges)
        try:
            rho = oracles.exact_density(edges)
        except oracles.SizeLimitError:
            self.oracle_skips += 1
            return
        c = 2 * p.theta
        self.checks["bracket"] += 1
        bracket = oracles.density_bracket(p, top, rho, c)
        if not bracket.ok:
            self._fail(f"estimate {bracket.estimate} outside bracket of density {rho}")
        if not edges:
            return
        self.checks["structural"] += 1
        structural = oracles.verify_structural_bound(engine.graph.out_degree, p, c, rho)
        if not structural.ok:
            self._fail(f"structural bound fails: k={structural.k}, "
                       f"{structural.lhs} > {structural.rhs}")
        if c:
            # The extraction bound is stated for the multiplicative invariant.
            return
        self.checks["extraction"] += 1
        found = self.monitor.extract_dense_subgraph()
        need = rho / ((1 + p.gamma) * (1 + p.slack) ** (found.k + 1))
        got = oracles.induced_density(edges, found.vertices)
        if got < need:
            self._fail(f"extracted set has density {got} < {need}")
        if found.touched != len(found.vertices):
            self._fail(f"extraction touched {found.touched} vertices for "
                       f"{len(found.vertices)} returned")

    def _overlays(self) -> None:
        engine, ov = self.engine, self.overlays
        edges = sorted(engine.edges)
        n = self.params.n_capacity
        self.checks["applications"] += 1
        mate = dict(enumerate(ov.matching.mate))
        if not oracles.check_maximal_matching(edges, mate):
            self._fail("matching is not a valid maximal matching")
        if not oracles.check_vertex_cover(edges, ov.matching.matched_vertices()):
            self._fail("matched vertices do not cover every edge")
        degree = Counter(x for e in edges for x in e)
        if not oracles.check_proper_coloring(edges, dict(enumerate(ov.coloring.color)), degree):
            self._fail("coloring is improper or exceeds a palette")
        arcs = [(u, v) for u, v, _ in engine.graph.arcs()]
        if not oracles.check_forest_partition(arcs, ov.forests.assignment()):
            self._fail("forest partition has a cycle or an unassigned arc")
        if ov.forests.forest_count() > 2 * engine.graph.max_out_degree():
            self._fail("more than 2 * max out-degree nonempty forests")
        mv = ov.matvec
        if not oracles.check_matvec(n, mv.entries, mv.diagonal, dict(enumerate(mv.x)), mv.query):
            self._fail("matrix-vector product disagrees with dense recomputation")

    def summary(self) -> dict:
        return {
            "level": self.level,
            "verdict": "skipped" if self.level == "off" else ("pass" if self.ok else "fail"),
            "checks": dict(sorted(self.checks.items())),
            "oracle_skips": self.oracle_skips,
            "violations": self.violations[:20],
        }


def exact_density_or_none(edges) -> Fraction | None:
    try:
        return oracles.exact_density(edges)
    except oracles.SizeLimitError:
        return None
