"""Continued fractions and weight expansions of rationals >= 1."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby

from .errors import DomainError, ParseError


@dataclass(frozen=True)
class ContinuedFraction:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise DomainError("empty continued fraction")
        if any(c < 1 for c in self.coeffs):
            raise DomainError(f"coefficients must be positive: {self.coeffs}")

    def value(self) -> Fraction:
        p, q = cf_value(self.coeffs)
        return Fraction(p, q)

    def canonical(self) -> "ContinuedFraction":
        """Rewrite a trailing 1 into the previous coefficient."""
        c = list(self.coeffs)
        if len(c) > 1 and c[-1] == 1:
            c.pop()
            c[-1] += 1
        return ContinuedFraction(tuple(c))

    def __str__(self):
        head, *tail = self.coeffs
        return f"[{head};{','.join(map(str, tail))}]" if tail else f"[{head}]"

    @classmethod
    def parse(cls, text: str) -> "ContinuedFraction":
        return cls(parse_cf(text))


@dataclass(frozen=True)
class WeightExpansion:
    entries: tuple[int, ...]

    @property
    def runs(self) -> tuple[int, ...]:
        """Run lengths of equal consecutive entries; these are the CF coefficients."""
        return tuple(len(list(g)) for _, g in groupby(self.entries))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def _check(p: int, q: int) -> None:
    if q < 1 or p < q:
        raise DomainError(f"need p >= q >= 1, got {p}/{q}")
    if math.gcd(p, q) != 1:
        raise DomainError(f"{p}/{q} is not in lowest terms")


def cf_expand(p: int, q: int) -> ContinuedFraction:
    """Canonical expansion of p/q; never ends in 1 unless p/q == 1."""
    _check(p, q)
    out = []
    while q:
        a, r = divmod(p, q)
        out.append(a)
        p, q = q, r
    return ContinuedFraction(tuple(out))


def cf_value(coeffs) -> tuple[int, int]:
    """Numerator and denominator of a finite continued fraction."""
    p, q = 1, 0
    for c in reversed(tuple(coeffs)):
        p, q = c * p + q, p
    return p, q


def weight_expansion(p: int, q: int) -> WeightExpansion:
    """Euclid-style expansion: floor(p/q) copies of q, then recurse on (q, p mod q)."""
    _check(p, q)
    out: list[int] = []
    while q:
        a, r = divmod(p, q)
        out.extend([q] * a)
        p, q = q, r
    return WeightExpansion(tuple(out))


_BLOCK = re.compile(r"\{([0-9,\s]+)\}\^(\d+)")


def parse_cf(text: str) -> tuple[int, ...]:
    """Parse ``[a;b,c,...]``, expanding blocks written ``{x,y}^k``."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError(f"continued fraction must be bracketed: {text!r}")
    body = s[1:-1].replace(" ", "")

    def expand(m: re.Match) -> str:
        block, k = m.group(1), int(m.group(2))
        return ",".join([block] * k) if k else ""

    body = _BLOCK.sub(expand, body)
    if "{" in body or "}" in body:
        raise ParseError(f"unbalanced block in {text!r}")
    parts = [x for x in body.replace(";", ",").split(",") if x]
    try:
        coeffs = tuple(int(x) for x in parts)
    except ValueError as exc:
        raise ParseError(f"bad coefficient in {text!r}") from exc
    if not coeffs or any(c < 1 for c in coeffs):
        raise ParseError(f"coefficients must be positive integers: {text!r}")
    return coeffs
