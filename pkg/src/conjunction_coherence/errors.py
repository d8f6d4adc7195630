"""Exception hierarchy shared by the library and the CLI.

The CLI maps :class:`InputError` and :class:`CapacityError` to exit code 2
and :class:`StateError` to exit code 1; anything else propagates.
"""

from __future__ import annotations


class CoherenceToolError(Exception):
    """Base class for all errors raised by ``conjunction_coherence``."""


class InputError(CoherenceToolError, ValueError):
    """Malformed or out-of-domain input (formulas, rationals, previsions)."""


class HypothesisError(InputError):
    """A closed-form result was queried outside the hypotheses it was derived under."""


class CapacityError(CoherenceToolError):
    """The problem is larger than the exhaustive enumeration cap."""


class StateError(CoherenceToolError, RuntimeError):
    """An operation was called in a state it does not accept."""


class SimplexError(CoherenceToolError, RuntimeError):
    """The exact simplex solver could not finish."""
