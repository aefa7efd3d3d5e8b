"""The shift S and reflection R, their orbit data, and induced maps on classes."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .classes import QuasiPerfect, make_class
from .errors import DomainError, ParseError


class _Infinity:
    """Projective point at infinity for fractional-linear actions."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"

    __str__ = __repr__


INF = _Infinity()


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


@dataclass(frozen=True)
class Mat2:
    a: object
    b: object
    c: object
    d: object

    def __post_init__(self):
        for k in "abcd":
            object.__setattr__(self, k, _norm(getattr(self, k)))

    @property
    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def det(self):
        return _norm(Fraction(self.a * self.d - self.b * self.c))

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                    self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def __pow__(self, k: int) -> "Mat2":
        if k < 0:
            return self.inverse() ** (-k)
        out, base = IDENTITY, self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def inverse(self) -> "Mat2":
        det = Fraction(self.det())
        if det == 0:
            raise DomainError("singular matrix")
        return Mat2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def apply_vec(self, x, y):
        return self.a * x + self.b * y, self.c * x + self.d * y

    def act(self, z):
        """Fractional-linear action on a rational or INF."""
        if z is INF:
            return INF if self.c == 0 else Fraction(self.a) / self.c
        num = self.a * z + self.b
        den = self.c * z + self.d
        if den == 0:
            return INF
        return Fraction(num) / den if not hasattr(num, "sign") else num / den

    def __str__(self):
        return f"({self.a},{self.b};{self.c},{self.d})"


IDENTITY = Mat2(1, 0, 0, 1)
S = Mat2(6, -1, 1, 0)
R = Mat2(6, -35, 1, -6)


@lru_cache(maxsize=None)
def y_seq(i: int) -> int:
    """y_0 = 0, y_1 = 1, y_{k+1} = 6 y_k - y_{k-1}; extended to negative indices."""
    if i == 0:
        return 0
    if i == 1:
        return 1
    if i > 1:
        a, b = 0, 1
        for _ in range(i - 1):
            a, b = b, 6 * b - a
        return b
    return -y_seq(-i)


def v(i: int):
    """Fixed point y_i / y_{i-1} of the reflection through it; v(1) is INF."""
    if i < 1:
        raise DomainError("v is indexed from 1")
    den = y_seq(i - 1)
    return INF if den == 0 else Fraction(y_seq(i), den)


def w(k: int) -> Fraction:
    if k < 1:
        raise DomainError("w is indexed from 1")
    return Fraction(y_seq(k + 1) + y_seq(k), y_seq(k) + y_seq(k - 1))


def S_power(k: int) -> Mat2:
    """Closed form (y_{k+1}, -y_k; y_k, -y_{k-1})."""
    return Mat2(y_seq(k + 1), -y_seq(k), y_seq(k), -y_seq(k - 1))


@dataclass(frozen=True)
class GroupElem:
    """The element S^i R^delta of the group generated by S and R."""

    i: int
    delta: int = 0

    def __post_init__(self):
        if self.delta not in (0, 1):
            raise DomainError("delta must be 0 or 1")

    @property
    def matrix(self) -> Mat2:
        return S_power(self.i) @ (R if self.delta else IDENTITY)

    @property
    def orientation(self) -> int:
        """+1 if orientation preserving on the z-line, -1 if reversing."""
        return -1 if self.delta else 1

    @property
    def eps_sign(self) -> int:
        return -1 if (self.i + self.delta) % 2 else 1

    def __mul__(self, other: "GroupElem") -> "GroupElem":
        if self.delta == 0:
            return GroupElem(self.i + other.i, other.delta)
        # R S^j = S^{-j} R
        return GroupElem(self.i - other.i, (1 + other.delta) % 2)

    def __str__(self):
        parts = []
        if self.i:
            parts.append("S" if self.i == 1 else f"S^{self.i}")
        if self.delta:
            parts.append("R")
        return " ".join(parts) or "id"


def refl(i: int) -> Mat2:
    """Reflection fixing v_i, equal to S^{2i-3} R."""
    if i < 2:
        raise DomainError("refl is defined for i >= 2")
    return Mat2(y_seq(2 * i - 1), -y_seq(2 * i), y_seq(2 * i - 2), -y_seq(2 * i - 1))


def refl_elem(i: int) -> GroupElem:
    if i < 2:
        raise DomainError("refl is defined for i >= 2")
    return GroupElem(2 * i - 3, 1)


_TOKEN = re.compile(r"S(?:\^\{?(-?\d+)\}?)?|R_\{?v_?\{?(\d+)\}?\}?|R|id")


def parse_group_elem(text: str) -> GroupElem:
    """Parse words such as ``S^3 R``, ``R``, ``S R``, ``R_{v_4}`` or ``id``."""
    s = text.replace("*", " ").strip()
    if not s:
        raise ParseError("empty group word")
    out = GroupElem(0, 0)
    pos = 0
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(s, pos)
        if not m:
            raise ParseError(f"cannot parse group word {text!r} at {s[pos:]!r}")
        tok = m.group(0)
        if tok == "id":
            g = GroupElem(0, 0)
        elif tok.startswith("R_"):
            g = refl_elem(int(m.group(2)))
        elif tok == "R":
            g = GroupElem(0, 1)
        else:
            g = GroupElem(int(m.group(1)) if m.group(1) else 1, 0)
        if out.delta and g.i > out.i:
            raise ParseError(f"{text!r} does not reduce to S^i R^delta with i >= 0")
        out = out * g
        pos = m.end()
    if out.i < 0:
        raise ParseError(f"{text!r} has a negative S exponent")
    return out


def sharp(T: GroupElem, c: QuasiPerfect) -> QuasiPerfect:
    """Induced action on classes: move (p, q) by T, keep t, twist eps by the parity of T."""
    p, q = T.matrix.apply_vec(c.p, c.q)
    return make_class(p, q, c.t, T.eps_sign * c.eps)


def base_blocking_U(n: int) -> QuasiPerfect:
    return QuasiPerfect(n + 3, n + 2, 2 * n + 6, 1, 2 * n + 3, 1)


_DEG_BASIS = Mat2(3, 4, 2, 3)


def deg_matrix_B(T: GroupElem) -> Mat2:
    """Integer matrix sending the degree pair of B^U_n to that of T#(B^U_n), for all n."""
    images = [sharp(T, base_blocking_U(n)) for n in (0, 1)]
    target = Mat2(images[0].d, images[1].d, images[0].m, images[1].m)
    M = target @ _DEG_BASIS.inverse()
    for n in range(2, 6):
        c = sharp(T, base_blocking_U(n))
        if M.apply_vec(n + 3, n + 2) != (c.d, c.m):
            raise ArithmeticError(f"degree map of {T} is not linear in n")
    return M


def deg_matrix_refl(i: int, flavor: str) -> Mat2:
    """Degree action of the reflection through v_i.

    Flavor ``"B"`` compares blocking classes of the shifted families and has order 2;
    flavor ``"P"`` compares the two families meeting at v_i and is rational in general.
    """
    if i < 2:
        raise DomainError("reflection index must be >= 2")
    if flavor == "B":
        return deg_matrix_B(GroupElem(i - 1, 0)) @ deg_matrix_B(GroupElem(i - 2, 1)).inverse()
    if flavor == "P":
        return deg_matrix_B(GroupElem(i - 1, 1)) @ deg_matrix_B(GroupElem(i - 2, 0)).inverse()
    raise ValueError("flavor must be 'B' or 'P'")


def principal_class(i: int) -> QuasiPerfect:
    """Closed form of (S^i)#(B^U_0)."""
    s = (-1) ** i
    yy = y_seq(i + 2) + y_seq(i + 1)
    return QuasiPerfect(3 * (yy + s) // 8, (yy + 9 * s) // 8, y_seq(i + 2), y_seq(i + 1), 3, s)


def s_coeff(i: int) -> int:
    return (3 * y_seq(i + 1) + 3 * y_seq(i) + (-1) ** i) // 4


def r_coeff(i: int) -> int:
    return (y_seq(i + 1) + y_seq(i) + 3 * (-1) ** i) // 4
