"""Exception hierarchy shared by every module."""


class TorsionObstructError(Exception):
    """Base class for all package errors."""


class GroupConstructionError(TorsionObstructError, ValueError):
    """Invalid parameters or a table that fails the group axioms."""


class ResourceError(TorsionObstructError):
    """A configured cap (order, cosets, lattice size, genus) was exceeded.

    This is never a mathematical verdict: an exhausted coset budget says
    nothing about whether the presented group is infinite.
    """


class BudgetExceeded(ResourceError):
    """A wall-clock time budget ran out before a search finished."""


class InternalError(TorsionObstructError):
    """An internal consistency check failed (e.g. a non-integral count)."""


class VerificationFailure(TorsionObstructError):
    """A verified identity did not hold; the message names the identity."""
