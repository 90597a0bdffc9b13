"""
Error kinds raised by bunkbed-lab.

Input problems derive from `ValueError`, computations that could not finish derive from `RuntimeError`. Every class
also derives from `BunkbedLabError` so callers can catch the whole family at once.
"""
from typing import Any, Dict, List, Optional


class BunkbedLabError(Exception):
    """Base class of all bunkbed-lab errors."""


########################################################################################################################
# Bad input
########################################################################################################################


class MalformedEdge(BunkbedLabError, ValueError):
    """Edge endpoint out of range, self-loop or duplicate edge."""


class NotAnEdge(BunkbedLabError, ValueError):
    """The queried vertex pair is not an edge of the graph."""


class SameSourceSink(BunkbedLabError, ValueError):
    """Source and sink of a flow problem coincide."""


class AsymmetricCapacities(BunkbedLabError, ValueError):
    """Horizontal capacities of a bunkbed network are not reflection-symmetric."""


class AsymmetricResistances(BunkbedLabError, ValueError):
    """Horizontal resistances of a bunkbed network are not reflection-symmetric."""


class DisconnectedPair(BunkbedLabError, ValueError):
    """The two terminals lie in different connected components."""


class WrongEndpoints(BunkbedLabError, ValueError):
    """A walk does not run from u0 to v0 or v1."""


class WrongClass(BunkbedLabError, ValueError):
    """A walk does not belong to the class expected by a bijection."""


class OutOfRange(BunkbedLabError, ValueError):
    """An integer parameter lies outside the range where a formula is defined."""


class ConfigError(BunkbedLabError, ValueError):
    """An experiment configuration is invalid."""


########################################################################################################################
# Computation did not finish
########################################################################################################################


class GenerationExhausted(BunkbedLabError, RuntimeError):
    """Rejection sampling of a connected graph hit its retry cap."""


class NotConverged(BunkbedLabError, RuntimeError):
    """
    The p-resistance solver stopped without meeting its convergence criteria.

    Attributes:
        best: best iterate found, when one is available.
        diagnostics: solver diagnostics (iterations, objective, gradient norm, ...).
    """

    def __init__(self, message: str, best: Any = None, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.best = best
        self.diagnostics = diagnostics or {}


class WalkLimitExceeded(BunkbedLabError, RuntimeError):
    """More walks would be stored than the caller allowed."""


class TimeBudgetExceeded(BunkbedLabError, RuntimeError):
    """
    A suite ran out of wall-clock budget.

    Attributes:
        records: records completed before the budget ran out.
    """

    def __init__(self, message: str, records: Optional[List[Any]] = None):
        super().__init__(message)
        self.records = records or []


class RecordNotFound(BunkbedLabError, RuntimeError):
    """No record with the requested id exists in the records file."""


class Mismatch(BunkbedLabError, RuntimeError):
    """Re-running a recorded instance did not reproduce the recorded result."""
