import itertools

import pytest
from hypothesis import given

from conftest import apply_toggles, toggles
from dynorient.engines import (
    ENGINES,
    AmortizedEngine,
    CapacityError,
    DuplicateEdgeError,
    MissingEdgeError,
    WorstCaseEngine,
    make_engine,
)
from dynorient.graph import check_invariant_theta, check_invariant_theta_prime
from dynorient.params import Parameters, derive_parameters

PARAMS = {
    "approx_Oalpha": derive_parameters("approx_Oalpha", 8),
    "additive_log": derive_parameters("additive_log", 8),
    "theta0_b2": Parameters(0, 2, 2, 1, 8),
}


@pytest.fixture(params=sorted(ENGINES))
def engine_name(request):
    return request.param


def test_first_edge_splits_evenly(engine_name):
    p = derive_parameters("approx_Oalpha", 2)
    e = make_engine(engine_name, p)
    e.insert_edge(0, 1)
    g = e.graph
    assert (g.mult(0, 1), g.mult(1, 0), g.out_degree[0], g.out_degree[1]) == (2, 2, 2, 2)


def test_star_keeps_invariant(engine_name):
    p = derive_parameters("additive_log", 8)
    e = make_engine(engine_name, p)
    for i in range(1, 6):
        e.insert_edge(0, i)
    assert check_invariant_theta(e.graph, p).ok
    assert check_invariant_theta_prime(e.graph, p).ok


def test_single_edge_needs_no_flip(engine_name):
    e = make_engine(engine_name, derive_parameters("additive_log", 8))
    trace = e.insert_edge(3, 4)
    assert trace.chain_length == 0 and trace.recourse == 0
    assert e.graph.mult(3, 4) == 1


def test_delete_only_edge(engine_name):
    e = make_engine(engine_name, derive_parameters("approx_Oalpha", 8))
    e.insert_edge(0, 1)
    e.delete_edge(1, 0)
    assert e.graph.out_degree == [0] * 8
    assert not any(e.graph.out_mult)
    assert all(len(b) == 0 for b in e.graph.in_buckets)


def test_k4_build_and_teardown(engine_name):
    p = PARAMS["theta0_b2"]
    e = make_engine(engine_name, p)
    pairs = list(itertools.combinations(range(4), 2))
    for u, v in pairs:
        e.insert_edge(u, v)
    for u, v in reversed(pairs):
        e.delete_edge(u, v)
        assert check_invariant_theta(e.graph, p).ok
        assert sum(e.graph.out_degree) == 2 * len(e.edges)


def test_errors(engine_name):
    e = make_engine(engine_name, derive_parameters("additive_log", 8))
    e.insert_edge(0, 1)
    with pytest.raises(DuplicateEdgeError):
        e.insert_edge(1, 0)
    with pytest.raises(MissingEdgeError):
        e.delete_edge(0, 2)
    with pytest.raises(CapacityError):
        e.insert_edge(0, 8)
    with pytest.raises(CapacityError):
        e.insert_edge(2, 2)
    with pytest.raises(ValueError):
        make_engine("nope", e.params)


class ArcWatcher:
    """Mirrors out-degrees from arc events and checks every arc operation.

    At each flip the giving endpoint must exceed the receiving one by at
    least 2, which is what makes chains strictly monotone; each arc
    operation must change exactly one vertex's out-degree by one; and
    Invariant theta' must hold between arc operations.
    """

    def __init__(self, engine):
        self.engine = engine
        self.deg = [0] * engine.params.n_capacity
        engine.subscribe_arc_ops(self)

    def __call__(self, events):
        deg = self.deg
        for kind, tail, head in events:
            if kind == "add":
                deg[tail] += 1
            elif kind == "remove":
                deg[tail] -= 1
            else:
                assert deg[tail] >= deg[head] + 2
                deg[tail] -= 1
                deg[head] += 1
        net = {}
        for kind, tail, head in events:
            if kind != "flip":
                net[tail] = 1 if kind == "add" else -1
        changes = [v for v in range(len(deg)) if deg[v] != self.engine.graph.out_degree[v]]
        assert not changes
        assert check_invariant_theta_prime(self.engine.graph, self.engine.params).ok


@pytest.mark.parametrize("engine_name", sorted(ENGINES))
@pytest.mark.parametrize("mode", sorted(PARAMS))
@given(pairs=toggles(8))
def test_random_streams_keep_every_guarantee(engine_name, mode, pairs):
    p = PARAMS[mode]
    e = make_engine(engine_name, p)
    ArcWatcher(e)
    snapshot = {}
    flips = 0

    def after(trace):
        nonlocal snapshot, flips
        flips += trace.recourse
        g = e.graph
        assert trace.replay(snapshot) == g.snapshot()
        snapshot = g.snapshot()
        assert check_invariant_theta(g, p).ok
        assert check_invariant_theta_prime(g, p).ok
        assert sum(g.out_degree) == p.b * len(e.edges)
        for u, v in e.edges:
            assert g.mult(u, v) + g.mult(v, u) == p.b
        deltas = trace.degree_deltas()
        assert sum(deltas.values()) == (p.b if trace.op == "+" else -p.b)
        assert e.audit() == []

    apply_toggles(e, pairs, after)
    assert e.total_flips == flips


def test_each_arc_op_changes_one_degree(engine_name):
    p = derive_parameters("approx_Oalpha", 8)
    e = make_engine(engine_name, p)
    seen = []

    def hook(events):
        delta = {}
        for kind, tail, head in events:
            if kind == "add":
                delta[tail] = delta.get(tail, 0) + 1
            elif kind == "remove":
                delta[tail] = delta.get(tail, 0) - 1
            else:
                delta[tail] = delta.get(tail, 0) - 1
                delta[head] = delta.get(head, 0) + 1
        seen.append(sorted(d for d in delta.values() if d))

    e.subscribe_arc_ops(hook)
    for u, v in itertools.combinations(range(6), 2):
        e.insert_edge(u, v)
    for u, v in itertools.combinations(range(6), 2):
        e.delete_edge(u, v)
    assert seen and all(d in ([1], [-1]) for d in seen)


def test_worstcase_fresh_insert_counters():
    p = derive_parameters("additive_log", 8)
    e = WorstCaseEngine(p)
    e.insert_edge(0, 1)
    report = e.step_budget_report()
    assert report["chain_length"] == 0
    assert report["cursor_advances"] <= p.scan_width


def test_worstcase_ring_emptied():
    e = WorstCaseEngine(derive_parameters("additive_log", 8))
    e.insert_edge(0, 1)
    e.delete_edge(0, 1)
    assert all(len(r) == 0 for r in e.rings)
    assert e.audit() == []


@given(pairs=toggles(8, max_size=40))
def test_worstcase_perceived_ranks_within_one(pairs):
    e = WorstCaseEngine(derive_parameters("approx_Oalpha", 8))
    apply_toggles(e, pairs, lambda t: None)
    assert e.perceived_rank_gap() <= 1
    assert not e.drift_violations


def test_amortized_new_adjacency_threshold():
    e = AmortizedEngine(derive_parameters("additive_log", 8))
    e.insert_edge(0, 1)
    assert e.phi == {(0, 1): 1}
    assert e.loop_iterations == 0


@given(pairs=toggles(8, max_size=40))
def test_amortized_lower_threshold_inequality(pairs):
    for mode in ("approx_Oalpha", "additive_log"):
        e = AmortizedEngine(PARAMS[mode])
        apply_toggles(e, pairs, lambda t: None)
        r = e.threshold_report()
        assert r["degree_below_threshold"]
        assert r["threshold_below_degree_plus_one"]
        if e.params.theta == 1:
            assert r["threshold_below_degree"]


def test_amortized_delete_refreshes_stale_thresholds():
    p = derive_parameters("additive_log", 16)
    e = AmortizedEngine(p)
    for w in range(1, 6):
        e.insert_edge(w, 0)
    for w in range(1, 6):
        for extra in range(6, 8):
            if not e.has_edge(w, extra):
                e.insert_edge(w, extra)
    in0 = [x for x in range(1, 6) if e.graph.mult(x, 0)]
    assert in0
    # Inflate every threshold pointing at 0 far above the true degree.
    for x in in0:
        e._set_phi(x, 0, 10 * e.graph.out_degree[x] + 10)
    stale = [x for x in in0 if p.stale(e.phi[(x, 0)], e.graph.out_degree[x])]
    assert stale == in0
    # Removing an arc out of 0 makes the delete scan N-(0).
    out0 = next(iter(e.graph.out_mult[0]))
    e.delete_edge(0, out0)
    for x in in0:
        if e.graph.mult(x, 0):
            assert not p.stale(e.phi[(x, 0)], e.graph.out_degree[x])
    assert e.audit() == []
