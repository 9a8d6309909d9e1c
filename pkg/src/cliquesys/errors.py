"""Exception types raised across the package."""


class CliqueSysError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(CliqueSysError, ValueError):
    """A numeric parameter is outside the domain an operation accepts."""


class NotPrimePower(ParameterError):
    pass


class NotPrime(ParameterError):
    pass


class BadDegreeBound(ParameterError):
    pass


class RangeError(ParameterError):
    pass


class NoValidPrime(ParameterError):
    pass


class BadParams(ParameterError):
    pass


class BadUniformity(ParameterError):
    pass


class NotOneSystem(ParameterError):
    pass


class InvalidElement(ParameterError):
    pass


class ZeroInverse(CliqueSysError, ZeroDivisionError):
    pass


class DuplicateAbscissa(ParameterError):
    pass


class WrongArity(ParameterError):
    pass


class TraceTooLarge(ParameterError):
    pass


class MalformedClique(CliqueSysError, ValueError):
    """A clique or edge has the wrong size, repeated ids, or ids out of range."""


class MalformedDocument(CliqueSysError, ValueError):
    """A serialized document does not match the expected schema."""


class UncoloredVertex(CliqueSysError, ValueError):
    pass


class InvariantViolation(CliqueSysError, AssertionError):
    """A per-run mathematical guarantee failed; indicates a bug, never bad input."""
