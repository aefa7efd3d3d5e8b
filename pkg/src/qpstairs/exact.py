"""Exact rationals and elements of real quadratic fields Q(sqrt(D)).

Rationals are plain :class:`fractions.Fraction` values.  A :class:`QuadExt`
stores ``a + b*sqrt(D)`` with ``D`` squarefree, so equality and sign tests
never touch floating point.
"""

from __future__ import annotations

import decimal
import functools
import math
import re
from fractions import Fraction
from typing import Union

from sympy import factorint

from .errors import DivisionError, DomainError, FieldError, ParseError

Rational = Fraction
Number = Union[int, Fraction, "QuadExt"]


def as_fraction(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError as exc:
            raise ParseError(f"not a rational: {x!r}") from exc
    if isinstance(x, QuadExt) and x.is_rational():
        return x.a
    raise TypeError(f"cannot treat {x!r} as a rational")


@functools.lru_cache(maxsize=4096)
def squarefree_split(n: int) -> tuple[int, int]:
    """Write a positive integer as ``s**2 * k`` with ``k`` squarefree; return (s, k)."""
    if n <= 0:
        raise DomainError(f"squarefree_split needs a positive integer, got {n}")
    s, k = 1, 1
    for prime, power in factorint(n).items():
        s *= prime ** (power // 2)
        if power % 2:
            k *= prime
    return s, k


def sqrt_decompose(r) -> tuple[Fraction, int]:
    """Return ``(c, D)`` with ``sqrt(r) = c*sqrt(D)``, ``c`` rational and ``D`` squarefree.

    >>> sqrt_decompose(8)
    (Fraction(2, 1), 2)
    >>> sqrt_decompose(Fraction(49, 4))
    (Fraction(7, 2), 1)
    """
    r = as_fraction(r)
    if r < 0:
        raise DomainError(f"square root of negative rational {r}")
    if r == 0:
        return Fraction(0), 1
    num, den = r.numerator, r.denominator
    s, k = squarefree_split(num * den)
    return Fraction(s, den), k


def qsqrt(r) -> "QuadExt":
    """Exact square root of a nonnegative rational as a QuadExt."""
    c, d = sqrt_decompose(r)
    return QuadExt(0, c, d)


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


class QuadExt:
    """Immutable ``a + b*sqrt(D)`` with rational ``a, b`` and squarefree ``D >= 1``.

    Values with ``b == 0`` are rational and combine with any field.
    """

    __slots__ = ("a", "b", "D")

    def __init__(self, a=0, b=0, D: int = 1):
        a = as_fraction(a)
        b = as_fraction(b)
        D = int(D)
        if D < 0:
            raise DomainError("radicand must be nonnegative")
        if D == 0:
            b, D = Fraction(0), 1
        elif b != 0:
            s, D = squarefree_split(D)
            b *= s
        if D == 1 and b != 0:
            a, b = a + b, Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "D", D if b != 0 else 1)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    @classmethod
    def coerce(cls, x) -> "QuadExt":
        if isinstance(x, QuadExt):
            return x
        return cls(as_fraction(x))

    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b != 0:
            raise DomainError(f"{self} is irrational")
        return self.a

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.D

    def sign(self) -> int:
        sa, sb = _sign(self.a), _sign(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        lhs, rhs = self.a * self.a, self.b * self.b * self.D
        if lhs > rhs:
            return sa
        if lhs < rhs:
            return sb
        return 0

    def _field(self, other: "QuadExt") -> int:
        if self.b == 0:
            return other.D
        if other.b == 0 or other.D == self.D:
            return self.D
        raise FieldError(f"sqrt({self.D}) and sqrt({other.D}) do not share a field")

    def __add__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self._field(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.D)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        D = self._field(o)
        return QuadExt(self.a * o.a + self.b * o.b * D, self.a * o.b + self.b * o.a, D)

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise DivisionError("division by zero in Q(sqrt(D))")
        return QuadExt(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        self._field(o)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return QuadExt.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out, base = QuadExt(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def _cmp(self, other) -> int:
        o = QuadExt.coerce(other)
        if self.b == 0 or o.b == 0 or self.D == o.D:
            return (self - o).sign()
        # different fields: compare u = self - o.a with v = o.b*sqrt(o.D) through squares
        u = QuadExt(self.a - o.a, self.b, self.D)
        su, sv = u.sign(), _sign(o.b)
        if su != sv:
            return 1 if su > sv else -1
        diff = (u * u - o.b * o.b * o.D).sign()
        return diff if su > 0 else -diff

    def __eq__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b and (self.b == 0 or self.D == o.D)

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.D)

    def to_decimal(self, digits: int = 30) -> decimal.Decimal:
        ctx = decimal.Context(prec=digits + 20)

        def dec(f: Fraction) -> decimal.Decimal:
            return ctx.divide(decimal.Decimal(f.numerator), decimal.Decimal(f.denominator))

        if self.b == 0:
            val = dec(self.a)
        else:
            root = ctx.multiply(dec(abs(self.b)), ctx.sqrt(decimal.Decimal(self.D)))
            if self.b < 0:
                root = ctx.minus(root)
            if _sign(self.a) * _sign(self.b) < 0:
                # opposite signs: divide the norm by the conjugate to avoid cancellation
                val = ctx.divide(dec(self.norm()), ctx.subtract(dec(self.a), root))
            else:
                val = ctx.add(dec(self.a), root)
        return decimal.Context(prec=digits).plus(val)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        op = "+" if self.b > 0 else "-"
        head = "" if self.a == 0 else f"{self.a}"
        if not head:
            op = "" if self.b > 0 else "-"
        return f"{head}{op}{abs(self.b)}*sqrt({self.D})"

    def __repr__(self):
        return f"QuadExt({self.a!s}, {self.b!s}, {self.D})"

    @classmethod
    def parse(cls, text: str) -> "QuadExt":
        """Inverse of ``str``: accepts ``"p/q"``, ``"a+b*sqrt(D)"`` and ``"b*sqrt(D)"``."""
        s = text.replace(" ", "")
        m = _QUAD_RE.fullmatch(s)
        if not m:
            try:
                return cls(Fraction(s))
            except ValueError as exc:
                raise ParseError(f"cannot parse {text!r}") from exc
        a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
        b = Fraction(m.group("b"))
        if m.group("sign") == "-" or m.group("neg"):
            b = -b
        return cls(a, b, int(m.group("D")))


_QUAD_RE = re.compile(
    r"(?:(?P<a>-?\d+(?:/\d+)?)(?P<sign>[+-])|(?P<neg>-))?(?P<b>\d+(?:/\d+)?)\*sqrt\((?P<D>\d+)\)"
)


def quad_sign(x) -> int:
    return QuadExt.coerce(x).sign()


def quad_arith(x, y, op: str) -> QuadExt:
    """Apply ``op`` in ``{'+','-','*','/'}`` to two field elements."""
    x, y = QuadExt.coerce(x), QuadExt.coerce(y)
    if op == "+":
        return x + y
    if op == "-":
        return x - y
    if op == "*":
        return x * y
    if op == "/":
        return x / y
    raise ValueError(f"unknown operator {op!r}")


def render(x, digits: int = 30) -> str:
    """Exact form followed by a decimal approximation with ``digits`` significant digits."""
    q = QuadExt.coerce(x)
    exact = str(q).replace("+", " + ").replace("-", " - ").strip()
    if exact.startswith("- "):
        exact = "-" + exact[2:]
    return f"{exact} ≈ {q.to_decimal(digits)}"


def to_number(x):
    """Collapse rational QuadExt values to Fraction; leave others alone."""
    if isinstance(x, QuadExt) and x.is_rational():
        return x.a
    return x
