"""Exception types shared by all vcn modules.

Refusals are always explicit: an operation that cannot honestly finish
raises instead of degrading to a sampled or truncated answer.
"""

from __future__ import annotations


class InputError(ValueError):
    """Malformed or out-of-contract input."""


class BudgetExceededError(RuntimeError):
    """A search or enumeration would exceed its stated budget."""


class GenerationError(RuntimeError):
    """Randomized generation exhausted its retries.

    best_t records the highest extension level any attempt achieved.
    """

    def __init__(self, message: str, best_t: int = -1):
        super().__init__(message)
        self.best_t = best_t


class WalkStuckError(RuntimeError):
    """No replacement vertex exists for a walk step.

    discrepancy holds the edge (as a vertex tuple) that could not be fixed.
    """

    def __init__(self, message: str, discrepancy=None):
        super().__init__(message)
        self.discrepancy = discrepancy


class SelectionStuckError(RuntimeError):
    """Greedy subgraph selection ran out of admissible vertices.

    constraints holds a description of the constraint set that failed.
    """

    def __init__(self, message: str, constraints=None):
        super().__init__(message)
        self.constraints = constraints
