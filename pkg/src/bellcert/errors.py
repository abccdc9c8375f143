"""Exception types shared across the package.

Every error raised on purpose by this library derives from
:class:`BellcertError`, so callers can catch the whole family at once.
"""

from __future__ import annotations


class BellcertError(Exception):
    """Base class for all errors raised by bellcert."""


class NotSymmetric(BellcertError):
    """A matrix expected to be symmetric (or Hermitian) is not."""


class DimMismatch(BellcertError):
    """Operands have incompatible shapes or dimensions."""


class EmptyInput(BellcertError):
    """A non-empty collection of matrices was required."""


class InvalidMeasurement(BellcertError):
    """Projections are not idempotent, not orthogonal, or do not sum to I."""


class NotOrderL(BellcertError):
    """An observable is not unitary of the claimed finite order."""


class TooLarge(BellcertError):
    """Problem size exceeds a hard safety limit."""


class BadDimension(BellcertError):
    """The local dimension is outside the supported range for this construction."""


class BadParams(BellcertError):
    """Scalar parameters violate their documented preconditions."""


class Infeasible(BellcertError):
    """An optimization problem has no feasible point."""


class Unreachable(BellcertError):
    """The requested target lies outside the reachable algebra."""


class SolverStall(BellcertError):
    """An iterative solver exhausted its budget without a certified verdict."""


class TrivialRegion(BellcertError):
    """Requested parameters fall outside the non-trivial region of a family."""
