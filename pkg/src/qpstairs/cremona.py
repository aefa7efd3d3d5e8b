"""Cremona moves on class vectors and reduction to a standard exceptional class."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .classes import ClassVector, QuasiPerfect, to_vector
from .errors import DomainError
from .symmetry import GroupElem, sharp


class Verdict(enum.Enum):
    EXCEPTIONAL = "Exceptional"
    NOT_EXCEPTIONAL = "NotExceptional"
    BUDGET_EXCEEDED = "BudgetExceeded"


def move(v: ClassVector, x: int, y: int, z: int) -> ClassVector:
    """Cremona move on coefficient positions x, y, z (index 0 is the m slot)."""
    n = list(v.coeffs)
    if len({x, y, z}) != 3 or not all(0 <= i < len(n) for i in (x, y, z)):
        raise DomainError(f"move needs three distinct positions in 0..{len(n) - 1}")
    delta = v.d - n[x] - n[y] - n[z]
    for i in (x, y, z):
        n[i] += delta
    return ClassVector(v.d + delta, tuple(n))


def apply_chain(v: ClassVector, chain) -> ClassVector:
    """Apply moves in the order listed."""
    for idx in chain:
        v = move(v, *idx)
    return v


@dataclass(frozen=True)
class MoveRecord:
    permutation: tuple[int, ...]
    delta: int
    result: ClassVector


@dataclass
class ReductionTrace:
    initial: ClassVector
    moves: list[MoveRecord] = field(default_factory=list)
    verdict: Verdict = Verdict.BUDGET_EXCEEDED
    reason: str = ""

    @property
    def final(self) -> ClassVector:
        return self.moves[-1].result if self.moves else self.initial

    def render(self) -> str:
        lines = [f"start {self.initial}"]
        for k, mv in enumerate(self.moves, 1):
            lines.append(f"move {k}: delta={mv.delta} -> {mv.result}")
        lines.append(f"verdict {self.verdict.value}" + (f" ({self.reason})" if self.reason else ""))
        return "\n".join(lines)


def _is_standard_exceptional(d: int, coeffs) -> bool:
    nonzero = [n for n in coeffs if n]
    return d == 0 and nonzero == [-1]


def _sorted_desc(coeffs) -> tuple[tuple[int, ...], tuple[int, ...]]:
    perm = tuple(sorted(range(len(coeffs)), key=lambda i: -coeffs[i]))
    return perm, tuple(coeffs[i] for i in perm)


def reduce(v: ClassVector | QuasiPerfect, budget: int | None = None) -> ReductionTrace:
    """Standard reduction: sort, hit the top three entries, repeat while that lowers the degree."""
    if isinstance(v, QuasiPerfect):
        v = to_vector(v)
    coeffs = tuple(n for n in v.coeffs if n)
    coeffs += (0,) * max(0, 3 - len(coeffs))
    trace = ReductionTrace(ClassVector(v.d, coeffs))
    if budget is None:
        budget = 10 * len(coeffs)
    if v.c1() != 1 or v.self_intersection() != -1:
        trace.verdict = Verdict.NOT_EXCEPTIONAL
        trace.reason = "c1 or self-intersection differs from an exceptional class"
        return trace
    d = v.d
    for _ in range(budget + 1):
        if _is_standard_exceptional(d, coeffs):
            trace.verdict = Verdict.EXCEPTIONAL
            return trace
        if d < 0:
            trace.verdict, trace.reason = Verdict.NOT_EXCEPTIONAL, "negative degree"
            return trace
        if min(coeffs) < 0:
            trace.verdict, trace.reason = Verdict.NOT_EXCEPTIONAL, "negative coefficient"
            return trace
        perm, coeffs = _sorted_desc(coeffs)
        delta = d - coeffs[0] - coeffs[1] - coeffs[2]
        if delta >= 0:
            trace.verdict, trace.reason = Verdict.NOT_EXCEPTIONAL, "reduced with positive degree"
            return trace
        if len(trace.moves) >= budget:
            break
        d += delta
        coeffs = tuple(n + delta if i < 3 else n for i, n in enumerate(coeffs))
        trace.moves.append(MoveRecord(perm, delta, ClassVector(d, coeffs)))
    trace.verdict = Verdict.BUDGET_EXCEEDED
    return trace


def is_exceptional(c: QuasiPerfect, budget: int | None = None) -> bool:
    return reduce(c, budget).verdict is Verdict.EXCEPTIONAL


# chain for the shift, 0-based positions in (Q x5, M, P-5Q); first move listed first
SHIFT_CHAIN = ((0, 1, 2), (3, 4, 5), (0, 1, 6), (2, 3, 4), (2, 5, 6))


def _nonzero_sorted(coeffs) -> tuple[int, ...]:
    return tuple(sorted((n for n in coeffs if n), reverse=True))


def verify_shift_equivalence(c: QuasiPerfect) -> bool:
    """Five moves take the head of S#(c) to the head of c; the tails agree."""
    if not c.geometric:
        raise DomainError(f"{c} is not geometric")
    C = sharp(GroupElem(1, 0), c)
    P, Q, M, D = C.p, C.q, C.m, C.d
    head = ClassVector(D, (Q,) * 5 + (M, P - 5 * Q))
    out = apply_chain(head, SHIFT_CHAIN)
    if out != ClassVector(c.d, (0, 0, c.q, 0, 0, 0, c.m)):
        return False
    big = to_vector(C).coeffs[1:]
    small = to_vector(c).coeffs[1:]
    tail = small[1:]
    if _nonzero_sorted(big) != _nonzero_sorted(head.coeffs[:5] + head.coeffs[6:] + tail):
        return False
    return _nonzero_sorted(out.coeffs + tail) == _nonzero_sorted(to_vector(c).coeffs)


REFLECTION_CHAIN_IMAGE = ((1, 2, 3), (4, 5, 6))
REFLECTION_CHAIN_SOURCE = ((0, 1, 2), (0, 3, 4), (1, 5, 6))


def verify_reflection_equivalence(c: QuasiPerfect) -> bool:
    """Two moves on R#(c) and three on c reach the same 7-entry head; the tails agree."""
    if not (c.geometric and c.eps == 1 and c.p > 7 * c.q):
        raise DomainError(f"{c} needs eps = +1 and center > 7")
    C = sharp(GroupElem(0, 1), c)
    lhs = apply_chain(ClassVector(C.d, (C.m,) + (C.q,) * 6), REFLECTION_CHAIN_IMAGE)
    rhs = apply_chain(ClassVector(c.d, (c.m,) + (c.q,) * 6), REFLECTION_CHAIN_SOURCE)
    if lhs.d != rhs.d or sorted(lhs.coeffs) != sorted(rhs.coeffs):
        return False
    big, small = to_vector(C).coeffs[1:], to_vector(c).coeffs[1:]
    return big[:6] == (C.q,) * 6 and small[:6] == (c.q,) * 6 and big[6:] == small[6:]
