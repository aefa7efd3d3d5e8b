"""The accumulation function, its two inverse branches, and the volume curve."""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction

from .classes import sigma
from .errors import DomainError
from .exact import QuadExt, as_fraction, qsqrt

# acc(1/3), the minimum of acc
ACC_MIN = QuadExt(3, 2, 2)
# acc(0), the right end of the lower branch
ACC_AT_ZERO = QuadExt(Fraction(7, 2), Fraction(3, 2), 5)

BRANCHES = ("U", "L")


def acc_coefficient(b):
    """Middle coefficient of z^2 - c z + 1 = 0 at parameter b."""
    b = QuadExt.coerce(b)
    return (3 - b) ** 2 / (1 - b * b) - 2


def acc(b) -> QuadExt:
    """Root > 1 of z^2 - ((3-b)^2/(1-b^2) - 2) z + 1 = 0 for rational b in [0, 1)."""
    b = as_fraction(b)
    if not 0 <= b < 1:
        raise DomainError(f"acc needs 0 <= b < 1, got {b}")
    c = (3 - b) ** 2 / (1 - b * b) - 2
    return (c + qsqrt(c * c - 4)) / 2


def in_branch_domain(p: int, q: int, branch: str) -> bool:
    z = Fraction(p, q)
    if z <= ACC_MIN:
        return False
    return branch == "U" or z <= ACC_AT_ZERO


def acc_inv(p: int, q: int, branch: str) -> QuadExt:
    """The b with acc(b) = p/q on the upper (b > 1/3) or lower (b < 1/3) branch."""
    if branch not in BRANCHES:
        raise ValueError(f"branch must be 'U' or 'L', got {branch!r}")
    if q <= 0:
        raise DomainError("denominator must be positive")
    if not in_branch_domain(p, q, branch):
        raise DomainError(f"{p}/{q} lies outside the {branch} branch domain")
    sign = 1 if branch == "U" else -1
    root = qsqrt(sigma(p, q))
    return (3 * p * q + sign * (p + q) * root) / (p * p + q * q + 3 * p * q)


@dataclass(frozen=True)
class PositiveRoot:
    """The positive square root of an exact field element, compared through squares."""

    square: QuadExt

    def cmp(self, x) -> int:
        """Sign of sqrt(square) - x."""
        x = QuadExt.coerce(x)
        if x.sign() < 0:
            return 1
        if x.sign() == 0:
            return self.square.sign()
        return (self.square - x * x).sign()

    def __lt__(self, x):
        return self.cmp(x) < 0

    def __gt__(self, x):
        return self.cmp(x) > 0

    def __le__(self, x):
        return self.cmp(x) <= 0

    def __ge__(self, x):
        return self.cmp(x) >= 0

    def equals(self, x) -> bool:
        return self.cmp(x) == 0

    def __float__(self):
        return float(self.square) ** 0.5

    def to_decimal(self, digits: int = 30) -> decimal.Decimal:
        ctx = decimal.Context(prec=digits + 10)
        return decimal.Context(prec=digits).plus(ctx.sqrt(self.square.to_decimal(digits + 10)))


def vol(b, z) -> PositiveRoot:
    """Volume curve sqrt(z / (1 - b^2))."""
    b, z = QuadExt.coerce(b), QuadExt.coerce(z)
    if not (0 <= b < 1):
        raise DomainError(f"vol needs 0 <= b < 1, got {b}")
    if z.sign() < 0:
        raise DomainError("vol needs z >= 0")
    return PositiveRoot(z / (1 - b * b))


def acc_equation_check(b, z) -> bool:
    """True iff (b, z) satisfies the accumulation equation exactly."""
    b, z = QuadExt.coerce(b), QuadExt.coerce(z)
    return ((1 - b * b) * (1 + z) ** 2 - (3 - b) ** 2 * z).sign() == 0


def consecutive_pair_parameters(p: int, q: int) -> tuple[Fraction, Fraction]:
    """(upper, lower) preimages when sigma(p, q) = 1, i.e. p/q = y_{k+1}/y_k."""
    if sigma(p, q) != 1:
        raise DomainError(f"sigma({p},{q}) != 1")
    return Fraction(p + q + 3, 3 * p + 3 * q + 1), Fraction(p + q - 3, 3 * p + 3 * q - 1)
