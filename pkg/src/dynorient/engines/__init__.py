"""The three update engines and a constructor by name."""

from __future__ import annotations

from ..params import Parameters
from .amortized import AmortizedEngine
from .base import CapacityError, DuplicateEdgeError, Engine, MissingEdgeError, edge_key
from .basic import BasicEngine
from .worstcase import RoundRobinRing, WorstCaseEngine

ENGINES: dict[str, type[Engine]] = {
    "basic": BasicEngine,
    "worstcase": WorstCaseEngine,
    "amortized": AmortizedEngine,
}


def make_engine(name: str, params: Parameters) -> Engine:
    try:
        cls = ENGINES[name]
    except KeyError:
        raise ValueError(f"unknown engine {name!r}; expected one of {sorted(ENGINES)}") from None
    return cls(params)


__all__ = [
    "ENGINES",
    "AmortizedEngine",
    "BasicEngine",
    "CapacityError",
    "DuplicateEdgeError",
    "Engine",
    "MissingEdgeError",
    "RoundRobinRing",
    "WorstCaseEngine",
    "edge_key",
    "make_engine",
]
