"""Exception types raised across the package."""


class ZeroDenominator(ZeroDivisionError):
    """A rational function was built with the zero polynomial as denominator."""


class DivisionByZero(ZeroDivisionError):
    """Field division (or a negative power) of the zero element."""


class BothZero(ValueError):
    """gcd requested of two zero polynomials."""


class ZeroExponent(ValueError):
    """Substitution q -> q**0 is not an automorphism."""


class PoleAtPoint(ArithmeticError):
    """The denominator vanishes at the evaluation point."""


class InvalidIndex(ValueError):
    """An index lies outside the range where the identity is stated."""


class DomainError(ValueError):
    """A p-adic function was called outside its domain of convergence."""


class PrecisionExhausted(ArithmeticError):
    """Cancellation consumed every significant p-adic digit."""


class ToleranceNotMet(ArithmeticError):
    """A floating-point series check exceeded its tolerance."""
