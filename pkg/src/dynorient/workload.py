"""Deterministic update streams in the text format the CLI replays."""

from __future__ import annotations

import itertools
import random

KINDS = ("random_gnm", "clique_flood", "density_ramp", "adversarial_hub")


class _Stream:
    """Tracks the live edge set so every emitted update is legal."""

    def __init__(self, n: int, rng: random.Random):
        self.n = n
        self.rng = rng
        self.present: dict[tuple[int, int], None] = {}
        self.lines: list[str] = []

    def insert(self, u: int, v: int) -> None:
        key = (min(u, v), max(u, v))
        self.present[key] = None
        self.lines.append(f"+ {key[0]} {key[1]}")

    def delete(self, u: int, v: int) -> None:
        key = (min(u, v), max(u, v))
        del self.present[key]
        self.lines.append(f"- {key[0]} {key[1]}")

    def random_absent(self) -> tuple[int, int] | None:
        n = self.n
        if len(self.present) >= n * (n - 1) // 2:
            return None
        while True:
            u, v = self.rng.sample(range(n), 2)
            key = (min(u, v), max(u, v))
            if key not in self.present:
                return key

    def random_present(self) -> tuple[int, int] | None:
        if not self.present:
            return None
        # Sorted so the choice does not depend on insertion history.
        return self.rng.choice(sorted(self.present))


def _random_gnm(s: _Stream, size: int, m: int) -> None:
    while len(s.lines) < size:
        if len(s.present) < m:
            s.insert(*s.random_absent())
        elif s.rng.random() < 0.5:
            s.delete(*s.random_present())
        else:
            e = s.random_absent()
            if e is None:
                s.delete(*s.random_present())
            else:
                s.insert(*e)


def _clique_flood(s: _Stream, size: int, m: int) -> None:
    # Build cliques on random vertex groups, then tear each down again.
    k = max(2, min(s.n, m))
    while len(s.lines) < size:
        group = sorted(s.rng.sample(range(s.n), k))
        pairs = [p for p in itertools.combinations(group, 2) if p not in s.present]
        for p in pairs:
            if len(s.lines) >= size:
                return
            s.insert(*p)
        s.rng.shuffle(pairs)
        for p in pairs:
            if len(s.lines) >= size:
                return
            s.delete(*p)


def _density_ramp(s: _Stream, size: int, m: int) -> None:
    # Growth-heavy first half, decay-heavy second half; both interleave.
    half = size // 2
    while len(s.lines) < size:
        grow = 0.85 if len(s.lines) < half else 0.15
        e = s.random_absent() if s.rng.random() < grow else None
        if e is not None:
            s.insert(*e)
        elif s.present:
            s.delete(*s.random_present())
        else:
            s.insert(*s.random_absent())


def _adversarial_hub(s: _Stream, size: int, m: int) -> None:
    # Vertex 0 keeps gaining and losing spokes over a sparse random background.
    background = 0
    while len(s.lines) < size:
        r = s.rng.random()
        if r < 0.2 and background < m:
            e = s.random_absent()
            if e is not None and 0 not in e:
                s.insert(*e)
                background += 1
                continue
        leaf = s.rng.randrange(1, s.n)
        if (0, leaf) in s.present:
            s.delete(0, leaf)
        else:
            s.insert(0, leaf)


_BUILDERS = {
    "random_gnm": _random_gnm,
    "clique_flood": _clique_flood,
    "density_ramp": _density_ramp,
    "adversarial_hub": _adversarial_hub,
}


def generate_workload(kind: str, seed: int, size: int, n: int = 16,
                      m: int | None = None, query_every: int = 0) -> str:
    """Return a stream of ``size`` updates over vertices [0, n).

    ``m`` is kind-specific: the target edge count for ``random_gnm``, the
    clique size for ``clique_flood``, and the background edge budget for
    ``adversarial_hub``. With ``query_every`` > 0 a ``? density`` line
    follows every that many updates. The output depends only on the
    arguments.
    """
    if kind not in _BUILDERS:
        raise ValueError(f"unknown workload {kind!r}; expected one of {KINDS}")
    if n < 2:
        raise ValueError("n must be at least 2")
    if size < 0:
        raise ValueError("size must be non-negative")
    if m is None:
        m = {"random_gnm": 2 * n, "clique_flood": min(n, 6),
             "density_ramp": 0, "adversarial_hub": n}[kind]
    if kind == "random_gnm":
        m = min(m, n * (n - 1) // 2)
    s = _Stream(n, random.Random(f"{kind}:{seed}"))
    _BUILDERS[kind](s, size, m)
    lines = s.lines[:size]
    if query_every > 0:
        out = []
        for i, line in enumerate(lines, 1):
            out.append(line)
            if i % query_every == 0:
                out.append("? density")
        lines = out
    return "".join(line + "\n" for line in lines)
