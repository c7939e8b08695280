"""Exception hierarchy.

Every error raised by the library derives from :class:`MahlerError`, so the
CLI can map them to exit code 2 with a one-line reason.
"""


class MahlerError(Exception):
    """Base class for all library errors."""


class FieldMismatch(MahlerError):
    pass


class ZeroConstantTerm(MahlerError):
    pass


class ParseError(MahlerError):
    pass


class InconsistentInitialSegment(MahlerError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"initial segment contradicts the recursion at index {index}")


class UnderdeterminedInput(MahlerError):
    pass


class InsufficientPrecision(MahlerError):
    pass


class DegenerateEquation(MahlerError):
    pass


class PolynomialInput(MahlerError):
    pass


class PrecisionExhausted(MahlerError):
    pass


class ConstantTermNotOne(MahlerError):
    pass


class MultiplicativelyDependent(MahlerError):
    pass


class InvalidExponents(MahlerError):
    pass


class DegreeBoundOverflow(MahlerError):
    pass


class PurelyPeriodicOrbit(MahlerError):
    pass


class BaseMismatch(MahlerError):
    pass


class BadPrime(MahlerError):
    pass


class FactorVanishes(MahlerError):
    pass


class UnknownName(MahlerError):
    pass


class ValidationFailure(MahlerError):
    """An internal cross-check failed; indicates a bug or a wrong input claim."""


class StateLimitExceeded(MahlerError):
    pass
