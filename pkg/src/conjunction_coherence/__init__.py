"""
Coherence of prevision assessments on conjunctions of conditional events.

- :mod:`.logic` -- atoms, formulas, conditional events, constituents
- :mod:`.crq` -- conjunctions as conditional random quantities and their value tables
- :mod:`.coherence` -- the exact recursive coherence check and coherent extension
- :mod:`.tnorm` -- Frank t-norms and parameter recovery
- :mod:`.regions` -- closed-form coherence regions for two and three conditionals
"""

from .coherence import AssessmentProblem, CoherenceVerdict, check_coherence, extension_interval
from .crq import ConjunctionTerm, PrevisionMap, conjunction_value_table
from .errors import CapacityError, CoherenceToolError, HypothesisError, InputError, SimplexError, StateError
from .tnorm import FrankParam, find_lambda, frank, frank_n

__version__ = "0.1.0"

__all__ = [
    "AssessmentProblem",
    "CapacityError",
    "CoherenceToolError",
    "CoherenceVerdict",
    "ConjunctionTerm",
    "FrankParam",
    "HypothesisError",
    "InputError",
    "PrevisionMap",
    "SimplexError",
    "StateError",
    "check_coherence",
    "conjunction_value_table",
    "extension_interval",
    "find_lambda",
    "frank",
    "frank_n",
    "__version__",
]
