"""Exception types shared across modules."""
from __future__ import annotations


class CapExceededError(ValueError):
    """A size or length limit configured for an exhaustive computation was exceeded."""


class HypothesisError(ValueError):
    """A structural precondition of a formula does not hold for the given graph."""


class NotUnicyclicError(ValueError):
    """The graph is not connected with exactly one cycle."""


class NotCospectralError(ValueError):
    """The graph does not share the target's characteristic polynomial."""
