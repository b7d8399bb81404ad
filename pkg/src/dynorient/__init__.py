"""Bounded out-degree orientations of fully dynamic graphs.

Three engines keep G^b (every edge copied b times) oriented so that each
arc u->v satisfies d+(u) <= (1 + eta/b) d+(v) + 2 theta. The maximum
out-degree then tracks the current density, which the density monitor
reports and extracts, and the application overlays build on.
"""

from .applications import Coloring, ForestPartition, MatVec, MaximalMatching
from .audit import Auditor, Overlays
from .density import DensityIndex, DensityMonitor, LevelSetReport, RoundedOrientation
from .engines import (
    ENGINES,
    AmortizedEngine,
    BasicEngine,
    CapacityError,
    DuplicateEdgeError,
    Engine,
    MissingEdgeError,
    WorstCaseEngine,
    make_engine,
)
from .graph import (
    ArcEvent,
    FlipTrace,
    InvariantReport,
    OrientedMultigraph,
    check_invariant_theta,
    check_invariant_theta_prime,
)
from .params import MODES, Parameters, ParameterError, derive_parameters
from .workload import generate_workload

__all__ = [
    "ENGINES", "MODES", "AmortizedEngine", "ArcEvent", "Auditor", "BasicEngine",
    "CapacityError", "Coloring", "DensityIndex", "DensityMonitor", "DuplicateEdgeError",
    "Engine", "FlipTrace", "ForestPartition", "InvariantReport", "LevelSetReport", "MatVec",
    "MaximalMatching", "MissingEdgeError", "OrientedMultigraph", "Overlays", "ParameterError",
    "Parameters", "RoundedOrientation", "WorstCaseEngine", "check_invariant_theta",
    "check_invariant_theta_prime", "derive_parameters", "generate_workload", "make_engine",
]
