"""Obstruction functions of quasi-perfect classes and blocking checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .accum import ACC_MIN, acc, acc_inv, vol
from .classes import QuasiPerfect
from .errors import DomainError
from .exact import QuadExt
from .staircase import PreStaircase, blocking_base


def _denominator(c: QuasiPerfect, b) -> QuadExt:
    den = c.d - c.m * QuadExt.coerce(b)
    if den.sign() <= 0:
        raise DomainError(f"d - m b <= 0 for {c} at b = {b}")
    return den


def mu(c: QuasiPerfect, b, z) -> QuadExt:
    """Obstruction of c at (b, z): q z/(d - m b) up to the center, p/(d - m b) after."""
    den = _denominator(c, b)
    z = QuadExt.coerce(z)
    if z <= Fraction(c.p, c.q):
        return c.q * z / den
    return QuadExt(c.p) / den


def is_obstructive(c: QuasiPerfect, b, z) -> bool:
    return vol(b, z) < mu(c, b, z)


def center_parameter(c: QuasiPerfect) -> QuadExt:
    """The b on the eps-branch whose accumulation point is the center of c."""
    return acc_inv(c.p, c.q, "U" if c.eps > 0 else "L")


def is_center_blocking(c: QuasiPerfect) -> bool:
    if not c.geometric:
        raise DomainError(f"{c} is not geometric")
    if c.center <= ACC_MIN:
        raise DomainError(f"center of {c} is not above the minimum of acc")
    return is_obstructive(c, center_parameter(c), c.center)


def break_point_at_own_b(c: QuasiPerfect) -> Fraction:
    """Where the obstruction at b = m/d meets the line (1 + z)/(3 - b), right of the center."""
    return Fraction(c.p * c.p + 1, c.p * c.q - 1)


def is_live_candidate(c: QuasiPerfect, b) -> bool:
    """(b d - m)^2 < 1 - b^2; only such classes can be obstructive near b."""
    b = QuadExt.coerce(b)
    return ((b * c.d - c.m) ** 2 - (1 - b * b)).sign() < 0


def blockU_check(n: int) -> dict:
    """Exact checks that m_n/d_n of B^U_n is blocked by B^U_{n+1}."""
    B, Bn = blocking_base("U", n), blocking_base("U", n + 1)
    b = Fraction(B.m, B.d)
    z = acc(b)
    lhs_sum = z + 1 / z
    return {
        "acc_below": z < 2 * n + 8,
        "sum_identity": lhs_sum == Fraction(4 * n * n + 24 * n + 39, 2 * n + 5),
        "obstructive": is_obstructive(Bn, b, z),
        "half_bound": z / 2 > (1 + z) * Fraction(n + 3, 2 * n + 7),
        "mu_is_half": mu(Bn, b, z) == z / 2,
    }


def association(B: QuasiPerfect, sc: PreStaircase) -> bool:
    """Linear relation tying each step of a staircase to the blocking class B."""
    for c in sc.steps:
        rhs = B.d * c.d - (B.q * c.p if sc.ascending else B.p * c.q)
        if B.m * c.m != rhs:
            return False
    return True


@dataclass(frozen=True)
class BlockedInterval:
    block: QuasiPerfect
    z_lo: QuadExt
    z_hi: QuadExt
    b_lo: QuadExt
    b_hi: QuadExt

    def contains_z(self, z) -> bool:
        return self.z_lo < z < self.z_hi

    def contains_b(self, b) -> bool:
        return self.b_lo < b < self.b_hi


def blocked_interval(B: QuasiPerfect, asc: PreStaircase, desc: PreStaircase) -> BlockedInterval:
    """Interval blocked by B, bounded by the limits of its two associated staircases."""
    if not asc.ascending or desc.ascending:
        raise DomainError("need an ascending and a descending staircase")
    if not (association(B, asc) and association(B, desc)):
        raise DomainError(f"staircases are not associated to {B}")
    la, ld = asc.limits(), desc.limits()
    b1, b2 = la.b_inf, ld.b_inf
    if b1 > b2:
        b1, b2 = b2, b1
    return BlockedInterval(B, la.z_inf, ld.z_inf, b1, b2)
