"""Seeds, recursions, families of pre-staircases, limit points and liveness checks."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .classes import QuasiPerfect, make_class
from .errors import Degenerate, DomainError
from .exact import QuadExt, qsqrt
from .symmetry import INF, GroupElem, sharp, v, w, y_seq

QUAD_FORM = ((-1, 3, 0), (3, -1, 0), (0, 0, 1))


def quad_form(x: Sequence[int], y: Sequence[int]) -> int:
    """x^T A y on triples (p, q, t)."""
    return sum(x[i] * QUAD_FORM[i][j] * y[j] for i in range(3) for j in range(3))


def seed_triple(c: QuasiPerfect) -> tuple[int, int, int]:
    return (c.p, c.q, c.t)


def recurse(x0, x1, nu: int, count: int) -> list:
    """x_{k+1} = nu x_k - x_{k-1}; returns count + 2 terms starting at x0.

    Works on integers or on equal-length tuples of integers.
    """
    if isinstance(x0, int):
        out = [x0, x1]
        for _ in range(count):
            out.append(nu * out[-1] - out[-2])
        return out
    out = [tuple(x0), tuple(x1)]
    for _ in range(count):
        out.append(tuple(nu * a - b for a, b in zip(out[-1], out[-2])))
    return out


def step_class(x0: QuasiPerfect, x1: QuasiPerfect, nu: int, kappa: int) -> QuasiPerfect:
    d, m, p, q, t = recurse(x0.as_tuple()[:5], x1.as_tuple()[:5], nu, max(kappa - 1, 0))[kappa]
    return QuasiPerfect(d, m, p, q, t, x0.eps)


# base data: blocking classes and the two seeds
def blocking_base(base: str, n: int) -> QuasiPerfect:
    if n < 0:
        raise DomainError("blocking index must be >= 0")
    if base == "U":
        return QuasiPerfect(n + 3, n + 2, 2 * n + 6, 1, 2 * n + 3, 1)
    if base == "L":
        if n == 0:
            return QuasiPerfect(0, -1, 1, 0, 3, -1)
        return QuasiPerfect(5 * n, n - 1, 12 * n + 1, 2 * n, 2 * n + 3, -1)
    raise ValueError(f"base must be 'U' or 'L', got {base!r}")


SEEDS = {
    "U": (QuasiPerfect(1, 1, 1, 1, 2, 1), QuasiPerfect(-2, 0, -5, -1, 2, 1)),
    "L": (QuasiPerfect(2, 0, 5, 1, 2, -1), QuasiPerfect(-13, -5, -29, -5, 2, -1)),
}


@dataclass(frozen=True)
class Family:
    """The image T#(S^base) of a base family under T = S^i R^delta."""

    T: GroupElem
    base: str

    def __post_init__(self):
        if self.base not in ("U", "L"):
            raise ValueError(f"base must be 'U' or 'L', got {self.base!r}")

    @property
    def effective(self) -> GroupElem:
        """T, or T R for base L, so that the family is effective#(S^U)."""
        return self.T * GroupElem(0, 1) if self.base == "L" else self.T

    def blocking(self, n: int) -> QuasiPerfect:
        return sharp(self.T, blocking_base(self.base, n))

    @property
    def seed_lower(self) -> QuasiPerfect:
        lo, hi = SEEDS[self.base]
        return sharp(self.T, hi if self.T.delta else lo)

    @property
    def seed_upper(self) -> QuasiPerfect:
        lo, hi = SEEDS[self.base]
        return sharp(self.T, lo if self.T.delta else hi)

    @property
    def centers_ascend(self) -> bool:
        """Whether blocking centers increase with n."""
        return (self.T.delta == 0) == (self.base == "U")

    def admissible(self, n: int, label: str) -> bool:
        if n < 0:
            return False
        needs_prev = (label == "l") if self.centers_ascend else (label == "u")
        return not (needs_prev and n == 0)

    def build(self, n: int, label: str, count: int) -> "PreStaircase":
        if label not in ("l", "u"):
            raise ValueError("label must be 'l' or 'u'")
        if not self.admissible(n, label):
            raise DomainError(f"{self}: staircase {label},{n} needs n >= 1")
        seed0 = self.seed_lower if label == "l" else self.seed_upper
        step = -1 if (label == "l") == self.centers_ascend else 1
        seed1 = self.blocking(n + step)
        block = self.blocking(n)
        return PreStaircase.from_seeds(seed0, seed1, block.t, count, label,
                                       block=block, family=self, n=n)

    def __str__(self):
        return f"{self.T}#(S^{self.base})"


def make_family(T: GroupElem, base: str) -> Family:
    return Family(T, base)


def build_staircase(F: Family, n: int, label: str, count: int) -> "PreStaircase":
    return F.build(n, label, count)


@dataclass(frozen=True)
class LimitData:
    nu: int
    sigma: int
    lam: QuadExt
    D: QuadExt
    M: QuadExt
    P: QuadExt
    Q: QuadExt
    T: QuadExt

    @property
    def z_inf(self) -> QuadExt:
        return self.P / self.Q

    @property
    def b_inf(self) -> QuadExt:
        return self.M / self.D


class Liveness(enum.Enum):
    LIVE = "Live"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class PreStaircase:
    nu: int
    label: str
    seed0: QuasiPerfect
    seed1: QuasiPerfect
    steps: tuple[QuasiPerfect, ...]
    block: QuasiPerfect | None = None
    family: Family | None = None
    n: int | None = None
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @classmethod
    def from_seeds(cls, seed0, seed1, nu, count, label, block=None, family=None, n=None):
        if seed0.eps != seed1.eps:
            raise DomainError("seeds must share eps")
        if quad_form(seed_triple(seed1), seed_triple(seed0)) != 4 * nu:
            raise DomainError("seeds are not compatible with nu")
        rows = recurse(seed0.as_tuple()[:5], seed1.as_tuple()[:5], nu, count)
        steps = tuple(QuasiPerfect(*r, seed0.eps) for r in rows)
        return cls(nu, label, seed0, seed1, steps, block, family, n)

    @property
    def ascending(self) -> bool:
        return self.label == "l"

    @property
    def eps(self) -> int:
        return self.seed0.eps

    @property
    def name(self) -> str:
        if self.family is None:
            return f"staircase(nu={self.nu})"
        return f"{self.family}_{self.label},{self.n}"

    def extend(self, count: int) -> "PreStaircase":
        return PreStaircase.from_seeds(self.seed0, self.seed1, self.nu, count, self.label,
                                       self.block, self.family, self.n)

    def limits(self) -> LimitData:
        if "limits" not in self._cache:
            self._cache["limits"] = limits(self)
        return self._cache["limits"]

    def geometric_steps(self) -> list[tuple[int, QuasiPerfect]]:
        return [(k, c) for k, c in enumerate(self.steps) if c.geometric]


def limits(sc: PreStaircase) -> LimitData:
    """Leading coefficients X = lim x_k / lambda^k for each coordinate."""
    nu = sc.nu
    sig = nu * nu - 4
    if sig <= 0:
        raise Degenerate(f"nu = {nu} gives no irrational growth rate")
    root = qsqrt(sig)
    x0, x1 = sc.seed0.as_tuple(), sc.seed1.as_tuple()

    def coeff(i: int) -> QuadExt:
        return Fraction(x0[i], 2) + Fraction(2 * x1[i] - nu * x0[i], 2 * sig) * root

    d, m, p, q, t = (coeff(i) for i in range(5))
    return LimitData(nu, sig, (nu + root) / 2, d, m, p, q, t)


def m_det(sc: PreStaircase) -> int:
    """m_1 d_0 - m_0 d_1 for the two seeds."""
    return sc.seed1.m * sc.seed0.d - sc.seed0.m * sc.seed1.d


def monotonicity(sc: PreStaircase) -> str:
    """'increasing' or 'decreasing' for the ratios m_k / d_k."""
    det = m_det(sc)
    if det == 0:
        raise Degenerate(f"{sc.name}: m_k/d_k is constant")
    return "increasing" if det > 0 else "decreasing"


def slope_quantities(sc: PreStaircase) -> tuple[QuadExt, QuadExt]:
    """(3D - M)/|3M - D| and |m_1 d_0 - m_0 d_1| / sqrt(sigma)."""
    L = sc.limits()
    lhs = (3 * L.D - L.M) / abs(3 * L.M - L.D)
    rhs = abs(m_det(sc)) / qsqrt(L.sigma)
    return lhs, rhs


def slope_condition(sc: PreStaircase, factor=1) -> bool:
    """Exact check of the slope inequality lhs > factor * rhs for a descending staircase."""
    if sc.ascending:
        raise DomainError("slope condition applies to descending staircases")
    lhs, rhs = slope_quantities(sc)
    return lhs > Fraction(factor) * rhs


def liveness(sc: PreStaircase, perfect: bool) -> Liveness:
    """Live when every sufficient condition holds; otherwise Unknown, never a negative verdict."""
    if not perfect or sc.nu < 3:
        return Liveness.UNKNOWN
    L = sc.limits()
    if L.z_inf.is_rational():
        return Liveness.UNKNOWN
    try:
        direction = monotonicity(sc)
    except Degenerate:
        return Liveness.UNKNOWN
    b = L.b_inf
    if not ((b > Fraction(1, 3) and direction == "decreasing")
            or (b < Fraction(1, 3) and direction == "increasing")):
        return Liveness.UNKNOWN
    if not sc.ascending and not slope_condition(sc):
        return Liveness.UNKNOWN
    return Liveness.LIVE


def z_interval(F: Family) -> tuple:
    """Open z-interval containing the limits of the family (endpoints may be INF)."""
    g = F.effective
    i = g.i
    if g.delta == 0:
        return (w(i + 1), v(i + 1))
    return (v(i + 2), w(i + 1))


def iter_corpus(i_max: int, n_max: int, count: int,
                bases: Sequence[str] = ("U", "L")) -> Iterator[PreStaircase]:
    """Every admissible staircase of T#(S^base), T = S^i R^delta, i <= i_max, n <= n_max."""
    for i in range(i_max + 1):
        for delta in (0, 1):
            for base in bases:
                F = Family(GroupElem(i, delta), base)
                for n in range(n_max + 1):
                    for label in ("l", "u"):
                        if F.admissible(n, label):
                            yield F.build(n, label, count)


def principal_staircases(i: int, count: int) -> tuple[PreStaircase, PreStaircase]:
    """(ascending, descending) staircases bracketing (S^i)#(B^U_0)."""
    asc = Family(GroupElem(i + 1, 1), "U").build(0, "l", count)
    desc = Family(GroupElem(i, 0), "U").build(0, "u", count)
    return asc, desc


def kappa_two_collapse(xs: Sequence[int], nu: int, k: int) -> int:
    """x_{k+2} from x_k and x_{k-2}."""
    return (nu * nu - 2) * xs[k] - xs[k - 2]


# seed ladder and the 1/3 staircase strands

def g_seq(i: int) -> int:
    """g_{-1} = g_0 = 1 and g_{k+1} = 6 g_k - g_{k-1}; equals y_{i+1} - y_i."""
    return y_seq(i + 1) - y_seq(i)


def ladder_seed(i: int) -> QuasiPerfect:
    """E_i = (d_i, m_i, g_i, g_{i-1}, 2, (-1)^i)."""
    return make_class(g_seq(i), g_seq(i - 1), 2, (-1) ** i)


ONE_THIRD_SEEDS = ((1, 2), (1, 4), (1, 5))
ONE_THIRD_T = (1, 1, 2)


def one_third_strand(strand: int, count: int) -> list[QuasiPerfect]:
    """Classes E_{k,strand} for k = 1..count, following the S orbit."""
    g = list(ONE_THIRD_SEEDS[strand])
    while len(g) < count + 1:
        g.append(6 * g[-1] - g[-2])
    t = ONE_THIRD_T[strand]
    return [make_class(g[k], g[k - 1], t, (-1) ** (k + strand)) for k in range(1, count + 1)]


def g_table(i_max: int = 6) -> list[dict]:
    rows = []
    for i in range(-1, i_max + 1):
        row = {"i": i, "g": g_seq(i)}
        if i >= 0:
            E = ladder_seed(i)
            row.update(m=E.m, d=E.d)
        rows.append(row)
    return rows


def is_infinite(x) -> bool:
    return x is INF
