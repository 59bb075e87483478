"""Exception hierarchy shared by the library and the ``tqc`` command line.

Every error carries the process exit code the CLI uses for it.
"""
from __future__ import annotations


class QuiverCellsError(Exception):
    """Base class for all expected failures."""

    exit_code = 1


class InputError(QuiverCellsError, ValueError):
    """Malformed input or a violated precondition."""


class NotAcyclicError(InputError):
    """Quiver contains an oriented cycle or a loop."""


class UnbalancedWeightError(InputError):
    """Weight does not sum to zero on some connected component."""


class PatternNotFoundError(InputError):
    """No reducible valency-2 sink exists in the quiver."""


class NotACirculationError(InputError):
    """Vector does not satisfy flow conservation at every vertex."""


class GrobnerOrderError(InputError):
    """Term order requires at most one singular vertex."""


class EmptyPolytopeError(QuiverCellsError):
    """Polytope has no lattice points (or is too degenerate for the request)."""

    exit_code = 2


class BudgetExceededError(QuiverCellsError):
    """An enumeration or search ran past its configured budget."""

    exit_code = 3

    def __init__(self, what: str, budget: int) -> None:
        super().__init__(f"{what} exceeded budget of {budget:,}")
        self.what = what
        self.budget = budget


class VerificationError(QuiverCellsError):
    """A computed result contradicts a proven statement."""

    exit_code = 4


class NormalityError(VerificationError):
    """A lattice point of k∇ is not a sum of k lattice points of ∇."""
