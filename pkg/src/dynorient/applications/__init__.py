"""Overlays that turn a low out-degree orientation into other dynamic structures.

Each overlay attaches to an empty engine running with theta=1, b=1 (so G^b is
G itself) and follows it through the engine's flip traces.
"""

from .coloring import Coloring
from .forests import ForestPartition
from .matching import MaximalMatching
from .matvec import MatVec

__all__ = ["Coloring", "ForestPartition", "MatVec", "MaximalMatching"]
