from __future__ import annotations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def toggles(n: int, max_size: int = 60):
    """Strategy: vertex pairs whose presence is flipped one after another."""
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    return st.lists(pair, max_size=max_size)


def apply_toggles(engine, pairs, after=None):
    """Insert absent pairs and delete present ones; call ``after(trace)`` each time."""
    for u, v in pairs:
        if engine.has_edge(u, v):
            trace = engine.delete_edge(u, v)
        else:
            trace = engine.insert_edge(u, v)
        if after is not None:
            after(trace)


# Acceptance verdicts, one line per criterion, printed after the run.
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
