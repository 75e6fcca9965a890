"""Exception hierarchy shared by all heckelie modules."""


class HeckelieError(Exception):
    """Base class for all errors raised by this package."""


class PreconditionError(HeckelieError):
    """An operation was called with arguments violating its contract."""


class RankMismatchError(PreconditionError):
    """Operands live over different ranks."""


class TruncationError(PreconditionError):
    """A truncated module is too shallow for the requested computation."""


class InternalInvariantError(HeckelieError):
    """A structural invariant failed; indicates a bug, not bad input."""


class DegreeOverflowError(InternalInvariantError):
    """Polynomial degree exceeded the straightening guard cap."""


class SplittingError(InternalInvariantError):
    """A module failed to split into absolutely irreducible pieces over Q.

    Surfaced instead of silently extending the scalar field.
    """
