"""Exact monotone Hurwitz numbers and the topological expansion of unitary matrix integrals."""

from __future__ import annotations

from .errors import (
    AlgebraMismatchError,
    CapacityError,
    HlabError,
    SingularEvaluationError,
    TruncationError,
)
from .partitions import Partition, enumerate_partitions

__version__ = "0.1.0"

__all__ = [
    "AlgebraMismatchError",
    "CapacityError",
    "HlabError",
    "Partition",
    "SingularEvaluationError",
    "TruncationError",
    "enumerate_partitions",
]
