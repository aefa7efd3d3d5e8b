"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside the domain where a quantity is defined."""


class FieldError(ValueError):
    """Operands live in different quadratic fields."""


class DivisionError(ZeroDivisionError):
    """Division by an exact zero."""


class NoSolution(ValueError):
    """No quasi-perfect class exists for the requested data."""


class InvalidClass(ValueError):
    """A tuple fails the quasi-perfect invariants."""


class Degenerate(ArithmeticError):
    """A quantity that should be nonzero vanishes identically."""


class ParseError(ValueError):
    """Malformed textual input."""
