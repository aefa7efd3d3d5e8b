"""Quasi-perfect classes (d, m, p, q, t, eps) and their coefficient vectors."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .cfrac import weight_expansion
from .errors import DomainError, InvalidClass, NoSolution


def sigma(p: int, q: int) -> int:
    return p * p - 6 * p * q + q * q


@dataclass(frozen=True)
class QuasiPerfect:
    """Integer tuple satisfying the Diophantine and linear identities below.

    Negative or formal tuples are allowed; ``geometric`` tells them apart.
    """

    d: int
    m: int
    p: int
    q: int
    t: int
    eps: int

    def __post_init__(self):
        d, m, p, q, t, e = self.d, self.m, self.p, self.q, self.t, self.eps
        problems = []
        if e not in (1, -1):
            problems.append("eps must be +1 or -1")
        if t <= 0:
            problems.append("t must be positive")
        if 3 * d != p + q + m:
            problems.append("3d != p+q+m")
        if d * d - m * m != p * q - 1:
            problems.append("d^2-m^2 != pq-1")
        if t * t != sigma(p, q) + 8:
            problems.append("t^2 != p^2-6pq+q^2+8")
        if 8 * d != 3 * (p + q) + e * t or 8 * m != (p + q) + 3 * e * t:
            problems.append("(d, m) disagree with (p, q, t, eps)")
        if problems:
            raise InvalidClass(f"{self.as_tuple()}: " + "; ".join(problems))

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.d, self.m, self.p, self.q, self.t, self.eps)

    @property
    def geometric(self) -> bool:
        return self.d > 0 and self.m >= 0 and self.p >= self.q >= 1 and math.gcd(self.p, self.q) == 1

    @property
    def center(self) -> Fraction:
        # formal (non-geometric) tuples are stored raw and get no center
        if not self.geometric:
            raise DomainError(f"{self} is not geometric and has no center")
        return Fraction(self.p, self.q)

    def __neg__(self) -> "QuasiPerfect":
        return QuasiPerfect(-self.d, -self.m, -self.p, -self.q, self.t, -self.eps)

    def __str__(self):
        sign = "+1" if self.eps > 0 else "-1"
        return f"({self.d},{self.m},{self.p},{self.q},{self.t},{sign})"

    def to_json(self) -> dict:
        return {"d": self.d, "m": self.m, "p": self.p, "q": self.q, "t": self.t,
                "eps": self.eps, "geometric": self.geometric}

    @classmethod
    def from_json(cls, record) -> "QuasiPerfect":
        if isinstance(record, str):
            record = json.loads(record)
        return cls(*(int(record[k]) for k in ("d", "m", "p", "q", "t", "eps")))


def make_class(p: int, q: int, t: int, eps: int) -> QuasiPerfect:
    """Recover (d, m) from (p, q, t, eps); raises InvalidClass when non-integral."""
    nd, nm = 3 * (p + q) + eps * t, (p + q) + 3 * eps * t
    if nd % 8 or nm % 8:
        raise InvalidClass(f"(p,q,t,eps)=({p},{q},{t},{eps}) gives non-integral (d,m)")
    return QuasiPerfect(nd // 8, nm // 8, p, q, t, eps)


def from_pq(p: int, q: int) -> QuasiPerfect:
    """The unique quasi-perfect class with center p/q."""
    if not (p > q >= 1) or math.gcd(p, q) != 1:
        raise DomainError(f"need coprime p > q >= 1, got {p}/{q}")
    t2 = sigma(p, q) + 8
    if t2 <= 0:
        raise NoSolution(f"{p}/{q}: t^2 = {t2} is not positive")
    t = math.isqrt(t2)
    if t * t != t2:
        raise NoSolution(f"{p}/{q}: t^2 = {t2} is not a square")
    for eps in (1, -1):
        try:
            return make_class(p, q, t, eps)
        except InvalidClass:
            continue
    raise NoSolution(f"{p}/{q}: no integral (d, m)")


def is_quasi_perfect(d: int, m: int, p: int, q: int) -> bool:
    if p <= 0 or q <= 0 or 3 * d != p + q + m or d * d - m * m != p * q - 1:
        return False
    t2 = sigma(p, q) + 8
    return t2 > 0 and math.isqrt(t2) ** 2 == t2


@dataclass(frozen=True)
class ClassVector:
    """Degree and exceptional-divisor coefficients; ``coeffs[0]`` is m."""

    d: int
    coeffs: tuple[int, ...]

    def c1(self) -> int:
        return 3 * self.d - sum(self.coeffs)

    def self_intersection(self) -> int:
        return self.d * self.d - sum(n * n for n in self.coeffs)

    def __str__(self):
        return f"({self.d}; {', '.join(map(str, self.coeffs))})"


def to_vector(c: QuasiPerfect) -> ClassVector:
    if not c.geometric:
        raise DomainError(f"{c} is not geometric")
    return ClassVector(c.d, (c.m,) + weight_expansion(c.p, c.q).entries)
