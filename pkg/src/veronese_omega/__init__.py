"""Torsion and cotorsion of Kähler differentials on Veronese cones, in exact arithmetic."""

from .errors import GenerationError, InconclusiveError, InconsistencyError
from .quotient import MMPClass, SingularityReport, classify
from .sections import VeroneseContext, make_context

__version__ = "0.1.0"

__all__ = [
    "GenerationError",
    "InconclusiveError",
    "InconsistencyError",
    "MMPClass",
    "SingularityReport",
    "VeroneseContext",
    "classify",
    "make_context",
]
