"""Exception types shared across the package."""


class AlgebraError(Exception):
    """Base class for all errors raised by this package."""


class ZeroDenominator(AlgebraError, ZeroDivisionError):
    """A rational function was built with denominator zero."""


class WrongCoefficientField(AlgebraError, TypeError):
    """An operation received coefficients outside the field it supports."""


class BoundsExceeded(AlgebraError):
    """Input degrees exceed the configured trial-division bounds."""


class MultivariateUnsupported(AlgebraError):
    """Factorization is only available for at most one coefficient variable."""


class PerfectCoefficients(AlgebraError):
    """Every coefficient is a p-th power at all depths, so no stabilization exponent exists."""


class NotIrreducible(AlgebraError):
    """A polynomial required to be irreducible failed certification."""


class NotTranscendental(AlgebraError):
    """The witness element must be transcendental over the base field."""


class InvalidDescriptor(AlgebraError, ValueError):
    """An algebra descriptor has malformed or inconsistent parameters."""


class ParseError(AlgebraError, ValueError):
    """Malformed element or polynomial text.

    `position` is the 0-based offset of the offending token when known.
    """

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class UnknownVariable(ParseError):
    """An identifier in the input is not a declared variable."""
