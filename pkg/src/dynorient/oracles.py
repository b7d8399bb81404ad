"""Brute-force ground truth for the guarantees the engines claim.

Everything here works from plain snapshots (edge lists, degree arrays,
dicts) and returns exact integers or Fractions.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .params import Parameters, ceil_log

MAX_EXHAUSTIVE = 24


class SizeLimitError(ValueError):
    """Too many active vertices for subset enumeration."""


Edge = tuple[int, int]


def _compact(edges: Iterable[Edge]) -> tuple[list[int], list[int]]:
    # Relabel active vertices 0..k-1; adjacency as bitmasks.
    edges = [tuple(e) for e in edges]
    verts = sorted({x for e in edges for x in e})
    if len(verts) > MAX_EXHAUSTIVE:
        raise SizeLimitError(f"{len(verts)} active vertices; limit is {MAX_EXHAUSTIVE}")
    index = {v: i for i, v in enumerate(verts)}
    adj = [0] * len(verts)
    for u, v in edges:
        a, b = index[u], index[v]
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return verts, adj


def max_edges_by_size(edges: Iterable[Edge]) -> list[int]:
    """``out[s]`` = max |E[S]| over vertex sets S of size s (active vertices only).

    Uses E[S] = E[S - {v}] + |N(v) & S| with v the highest member of S,
    filled one vertex at a time over all 2^k subsets.
    """
    _, adj = _compact(edges)
    k = len(adj)
    counts = np.zeros(1 << k, dtype=np.int32)
    for v in range(k):
        lo = 1 << v
        subsets = np.arange(lo, lo << 1, dtype=np.uint32)
        lower = np.uint32(adj[v] & (lo - 1))
        counts[lo:lo << 1] = counts[:lo] + np.bitwise_count(subsets & lower)
    sizes = np.bitwise_count(np.arange(1 << k, dtype=np.uint32))
    best = np.zeros(k + 1, dtype=np.int64)
    np.maximum.at(best, sizes, counts)
    return [int(x) for x in best]


def exact_density(edges: Iterable[Edge]) -> Fraction:
    """Maximum over nonempty S of |E[S]| / |S|; 0 for an edgeless graph."""
    best = max_edges_by_size(edges)
    return max((Fraction(m, s) for s, m in enumerate(best) if s), default=Fraction(0))


def exact_arboricity(edges: Iterable[Edge]) -> int:
    """max over |S| >= 2 of ceil(|E[S]| / (|S| - 1)); 0 for an edgeless graph."""
    best = max_edges_by_size(edges)
    return max((-(-m // (s - 1)) for s, m in enumerate(best) if s >= 2), default=0)


def induced_density(edges: Iterable[Edge], vertices: Iterable[int]) -> Fraction:
    chosen = set(vertices)
    if not chosen:
        return Fraction(0)
    inside = sum(1 for u, v in edges if u in chosen and v in chosen)
    return Fraction(inside, len(chosen))


def peeling_density(edges: Iterable[Edge]) -> Fraction:
    """Density of the best suffix of a min-degree peeling; at least half the optimum.

    Suitable for graphs far beyond the exhaustive limit. Only a plausibility
    monitor: it is a lower bound, not the optimum.
    """
    nbrs: dict[int, set[int]] = {}
    m = 0
    for u, v in edges:
        nbrs.setdefault(u, set()).add(v)
        nbrs.setdefault(v, set()).add(u)
        m += 1
    if not m:
        return Fraction(0)
    degree = {v: len(s) for v, s in nbrs.items()}
    buckets: dict[int, set[int]] = {}
    for v, d in degree.items():
        buckets.setdefault(d, set()).add(v)
    alive = len(degree)
    best = Fraction(m, alive)
    low = 0
    while alive > 1:
        while not buckets.get(low):
            low += 1
        v = min(buckets[low])
        buckets[low].discard(v)
        for w in nbrs[v]:
            d = degree[w]
            buckets[d].discard(w)
            degree[w] = d - 1
            buckets.setdefault(d - 1, set()).add(w)
            nbrs[w].discard(v)
        m -= degree.pop(v)
        alive -= 1
        low = max(low - 1, 0)
        best = max(best, Fraction(m, alive))
    return best


@dataclass(frozen=True)
class StructuralReport:
    """Outcome of :func:`verify_structural_bound`."""

    ok: bool
    k: int
    sizes: tuple[int, ...]
    k_within_log: bool
    bound_holds: bool
    lhs: Fraction
    rhs: Fraction


def level_set_sizes(degrees: list[int], params: Parameters, c: int = 0) -> tuple[int, list[int]]:
    """Sizes of T_0, T_1, ... up to T_{k+1}, and the first k where growth stalls.

    T_i holds the vertices with d+ >= D a^-i - c (a^-1 + ... + a^-i), where
    D is the maximum out-degree and a = 1 + eta/b; k is the smallest i with
    |T_{i+1}| < (1 + gamma) |T_i|.
    """
    a = 1 + params.slack
    top = max(degrees)
    grow = 1 + params.gamma
    sizes: list[int] = []
    threshold, tail, inv = Fraction(top), Fraction(0), Fraction(1)
    i = 0
    while True:
        sizes.append(sum(1 for d in degrees if d >= threshold - c * tail))
        if i >= 1 and sizes[i] < grow * sizes[i - 1]:
            return i - 1, sizes
        i += 1
        inv /= a
        threshold = top * inv
        tail += inv


def verify_structural_bound(
    degrees: list[int],
    params: Parameters,
    c: int,
    rho: Fraction,
) -> StructuralReport:
    """Check the level-set density bound on one snapshot.

    ``degrees`` are the out-degrees in G^b over the whole vertex universe,
    ``rho`` the exact density of G. Holds whenever the arc invariant with
    additive constant ``c`` does: the first stalled level k satisfies
    (1+gamma)^k <= n and a^-k D <= (1+gamma) b rho + c (b/eta + 1).
    """
    k, sizes = level_set_sizes(degrees, params, c)
    n = len(degrees)
    a = 1 + params.slack
    lhs = max(degrees) / a ** k
    rhs = (1 + params.gamma) * params.b * rho + c * (params.b / params.eta + 1)
    k_ok = (1 + params.gamma) ** k <= n
    bound_ok = lhs <= rhs
    return StructuralReport(k_ok and bound_ok, k, tuple(sizes), k_ok, bound_ok, lhs, rhs)


@dataclass(frozen=True)
class Bracket:
    ok: bool
    lower_ok: bool
    upper_ok: bool
    estimate: Fraction
    upper: Fraction


def density_bracket(params: Parameters, max_degree: int, rho: Fraction, c: int = 0) -> Bracket:
    """rho <= D/b, and D <= a^K ((1+gamma) b rho + c (b/eta + 1)) with K = ceil(log_{1+gamma} n).

    With c = 0 the upper side reads D <= (1+gamma) a^K b rho.
    """
    a = 1 + params.slack
    big_k = ceil_log(1 + params.gamma, params.n_capacity)
    estimate = Fraction(max_degree, params.b)
    upper = a ** big_k * ((1 + params.gamma) * params.b * rho
                          + c * (params.b / params.eta + 1))
    lower_ok = rho <= estimate
    upper_ok = max_degree <= upper
    return Bracket(lower_ok and upper_ok, lower_ok, upper_ok, estimate, upper)


def check_maximal_matching(edges: Iterable[Edge], mate: Mapping[int, int | None]) -> bool:
    """Matched pairs are symmetric edges of G and no edge has two free ends."""
    edge_set = {(min(u, v), max(u, v)) for u, v in edges}
    for v, w in mate.items():
        if w is None:
            continue
        if mate.get(w) != v or (min(v, w), max(v, w)) not in edge_set:
            return False
    return all(mate.get(u) is not None or mate.get(v) is not None for u, v in edge_set)


def check_vertex_cover(edges: Iterable[Edge], cover: Iterable[int]) -> bool:
    chosen = set(cover)
    return all(u in chosen or v in chosen for u, v in edges)


def check_proper_coloring(
    edges: Iterable[Edge],
    color: Mapping[int, int],
    degree: Mapping[int, int],
) -> bool:
    """Endpoints differ and every color lies in [0, degree]."""
    edges = list(edges)
    if any(color[u] == color[v] for u, v in edges):
        return False
    return all(0 <= color[v] <= degree.get(v, 0) for v in color)


def check_forest_partition(
    arcs: Iterable[Edge],
    assignment: Mapping[Edge, tuple[int, int]],
) -> bool:
    """Every arc is assigned; each class is a forest; each S_i has out-degree <= 1.

    ``arcs`` are the current orientation (tail, head); ``assignment`` maps
    each arc to (pseudoforest index, half).
    """
    arcs = list(arcs)
    if set(arcs) != set(assignment):
        return False
    out_in_class: set[tuple[int, int]] = set()
    parent: dict[tuple[int, int, int], tuple[int, int, int]] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for tail, head in arcs:
        i, half = assignment[(tail, head)]
        if (tail, i) in out_in_class:
            return False
        out_in_class.add((tail, i))
        a, b = find((i, half, tail)), find((i, half, head))
        if a == b:
            return False
        parent[a] = b
    return True


def check_matvec(
    n: int,
    entries: Mapping[Edge, Fraction],
    diagonal: Mapping[int, Fraction],
    x: Mapping[int, Fraction],
    query: Callable[[int], Fraction],
) -> bool:
    """Compare query(i) against a dense recomputation of (Ax)_i for every i."""
    dense = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), value in entries.items():
        dense[i][j] = dense[j][i] = Fraction(value)
    for i, value in diagonal.items():
        dense[i][i] = Fraction(value)
    xs = [Fraction(x.get(j, 0)) for j in range(n)]
    for i in range(n):
        row = dense[i]
        want = sum((row[j] * xs[j] for j in range(n) if row[j]), Fraction(0))
        if query(i) != want:
            return False
    return True
