"""Exact coherence checking and coherent extension."""
from .engine import build_sigma, check_coherence, check_sub_assessment, feasible, max_antecedent_mass
from .extension import extension_interval
from .models import (
    AssessmentProblem,
    CoherenceVerdict,
    ExtensionResult,
    LevelRecord,
    SeparatingHyperplane,
    SigmaSystem,
)
from .simplex import FeasibilityResult, OptimumResult, RationalSimplex

__all__ = [
    "AssessmentProblem",
    "CoherenceVerdict",
    "ExtensionResult",
    "FeasibilityResult",
    "LevelRecord",
    "OptimumResult",
    "RationalSimplex",
    "SeparatingHyperplane",
    "SigmaSystem",
    "build_sigma",
    "check_coherence",
    "check_sub_assessment",
    "extension_interval",
    "feasible",
    "max_antecedent_mass",
]
