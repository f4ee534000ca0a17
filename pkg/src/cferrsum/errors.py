"""Exception types shared by all modules."""


class DomainError(ValueError):
    """An input violates a precondition of the operation."""


class DegenerateInputError(DomainError):
    """The input encodes a rational where an irrational is required."""


class LengthError(IndexError):
    """A digit stream ran out before the requested index."""


class PrecisionExhausted(ArithmeticError):
    """An enclosure is too wide to decide a floor or a sign.

    Retrying at a higher working precision usually helps.
    """
