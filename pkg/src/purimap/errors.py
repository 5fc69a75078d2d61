"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Input fails a structural precondition (shape, finiteness, range)."""


class DimensionMismatchError(InvalidInputError):
    """Operands act on spaces of incompatible dimension."""


class InvalidStateError(InvalidInputError):
    """Matrix or vector is not a valid quantum state."""


class InvalidChannelError(InvalidInputError):
    """Kraus list does not define a trace-preserving channel."""


class InfeasibleTargetError(InvalidInputError):
    """Requested channel action is not achievable by any CPTP map."""


class ConstructionError(ArithmeticError):
    """A constructed object failed its own post-hoc verification."""
