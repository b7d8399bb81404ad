from __future__ import annotations

from ..engines.base import Engine


def require_simple_orientation(engine: Engine) -> None:
    """Overlays read arcs of G directly, which needs b = 1 and a fresh engine."""
    p = engine.params
    if p.b != 1 or p.theta != 1:
        raise ValueError(f"overlays need theta=1, b=1; got theta={p.theta}, b={p.b}")
    if engine.edges:
        raise ValueError("overlays must be attached before the first edge")
