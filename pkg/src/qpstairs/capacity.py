"""Exact piecewise-linear lower bounds for the capacity function at fixed b."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Sequence

from .accum import PositiveRoot, vol
from .classes import QuasiPerfect
from .errors import DomainError
from .exact import QuadExt, as_fraction
from .staircase import PreStaircase

VOLUME = "volume"


@dataclass(frozen=True)
class Piece:
    """mu = slope * z + intercept for lo <= z <= hi; None means unbounded."""

    lo: object
    hi: object
    slope: QuadExt
    intercept: QuadExt

    def covers(self, z) -> bool:
        return (self.lo is None or self.lo <= z) and (self.hi is None or z <= self.hi)

    def at(self, z) -> QuadExt:
        return self.slope * z + self.intercept


@dataclass(frozen=True)
class AffineObstruction:
    """A class given by its degree data and affine pieces (A + C z)/(d - m b) on [lo, hi]."""

    label: str
    d: int
    m: int
    pieces: tuple[tuple[object, object, int, int], ...]

    def pieces_at(self, b) -> list[Piece]:
        den = self.d - self.m * QuadExt.coerce(b)
        if den.sign() <= 0:
            raise DomainError(f"{self.label}: d - m b <= 0")
        return [Piece(lo, hi, QuadExt(C) / den, QuadExt(A) / den) for lo, hi, A, C in self.pieces]

    def __str__(self):
        return self.label


# the class 3L - E_0 - 2E_1 - E_2 - ... - E_6, valid for z >= 5
LOW_DEGREE_E1 = AffineObstruction("E1(3;1,2,1,1,1,1,1)", 3, 1,
                                  ((Fraction(5), Fraction(6), 1, 1), (Fraction(6), None, 7, 0)))


def obstruction_pieces(c, b) -> list[Piece]:
    if isinstance(c, QuasiPerfect):
        den = c.d - c.m * QuadExt.coerce(b)
        if den.sign() <= 0:
            raise DomainError(f"{c}: d - m b <= 0")
        center = Fraction(c.p, c.q)
        return [Piece(None, center, c.q / den, QuadExt(0)),
                Piece(center, None, QuadExt(0), c.p / den)]
    return c.pieces_at(b)


def evaluate(pieces: Sequence[Piece], z):
    vals = [pc.at(z) for pc in pieces if pc.covers(z)]
    return max(vals) if vals else None


def _cmp(x, y) -> int:
    return (QuadExt.coerce(x) - y).sign()


_key = cmp_to_key(_cmp)


@dataclass(frozen=True)
class EnvelopePoint:
    z: QuadExt
    kind: str
    value: object
    dominating: object


@dataclass(frozen=True)
class Segment:
    z_a: QuadExt
    z_b: QuadExt
    dominating: object
    slope: QuadExt | None
    intercept: QuadExt | None

    def at(self, z):
        return self.slope * z + self.intercept


@dataclass
class Envelope:
    b: QuadExt
    z_lo: QuadExt
    z_hi: QuadExt
    labels: list[str]
    points: list[EnvelopePoint]
    segments: list[Segment]
    corners: list[tuple[int, QuadExt, QuadExt]] = field(default_factory=list)

    def value_at(self, z):
        """Largest obstruction at z, or None where no class is defined."""
        z = QuadExt.coerce(z)
        if not (self.z_lo <= z <= self.z_hi):
            raise DomainError("z outside the envelope window")
        for seg in self.segments:
            if seg.z_a <= z <= seg.z_b and seg.slope is not None:
                return seg.at(z)
        return None

    def volume(self, z) -> PositiveRoot:
        return vol(self.b, z)


def _crossing(p1: Piece, p2: Piece):
    ds = p1.slope - p2.slope
    if ds.sign() == 0:
        return None
    return (p2.intercept - p1.intercept) / ds


def _obstructive_somewhere(b, slope, intercept, z_a, z_b) -> bool:
    # (1-b^2)(slope z + intercept)^2 - z is convex in z, so its max on [z_a, z_b] is at an end
    one_minus = 1 - QuadExt.coerce(b) ** 2
    def f(z):
        return (one_minus * (slope * z + intercept) ** 2 - z).sign()
    return f(z_a) > 0 or f(z_b) > 0


def envelope(classes: Sequence, b, z_lo, z_hi) -> Envelope:
    """Max of the obstructions of ``classes`` on [z_lo, z_hi] at fixed b.

    Ties go to the class listed first.  Segments where the max stays at or below
    the volume curve are labelled ``"volume"``.  An empty class list gives one
    volume segment and no breakpoints.
    """
    b = QuadExt.coerce(b)
    z_lo, z_hi = QuadExt.coerce(z_lo), QuadExt.coerce(z_hi)
    if not z_lo < z_hi:
        raise DomainError("need z_lo < z_hi")
    labels = [str(c) for c in classes]
    pieces = [obstruction_pieces(c, b) for c in classes]

    cands = {z_lo, z_hi}
    flat = [(k, pc) for k, ps in enumerate(pieces) for pc in ps]
    for _, pc in flat:
        for end in (pc.lo, pc.hi):
            if end is not None and z_lo < end < z_hi:
                cands.add(QuadExt.coerce(end))
    for x in range(len(flat)):
        for y in range(x + 1, len(flat)):
            z = _crossing(flat[x][1], flat[y][1])
            if z is not None and z_lo < z < z_hi:
                cands.add(z)
    zs = sorted(cands, key=_key)

    raw: list[Segment] = []
    for za, zb in zip(zs, zs[1:]):
        mid = (za + zb) / 2
        best, best_val, best_piece = None, None, None
        for k, ps in enumerate(pieces):
            for pc in ps:
                if pc.covers(mid):
                    val = pc.at(mid)
                    if best_val is None or val > best_val:
                        best, best_val, best_piece = k, val, pc
        if best is None:
            raw.append(Segment(za, zb, VOLUME, None, None))
        else:
            raw.append(Segment(za, zb, best, best_piece.slope, best_piece.intercept))

    merged: list[Segment] = []
    for seg in raw:
        prev = merged[-1] if merged else None
        if prev and prev.dominating == seg.dominating and prev.slope == seg.slope \
                and prev.intercept == seg.intercept:
            merged[-1] = Segment(prev.z_a, seg.z_b, seg.dominating, seg.slope, seg.intercept)
        else:
            merged.append(seg)

    segments = []
    for seg in merged:
        if seg.slope is not None and not _obstructive_somewhere(b, seg.slope, seg.intercept,
                                                                seg.z_a, seg.z_b):
            seg = Segment(seg.z_a, seg.z_b, VOLUME, seg.slope, seg.intercept)
        segments.append(seg)

    def max_at(z):
        best, best_val = VOLUME, None
        for k, ps in enumerate(pieces):
            val = evaluate(ps, z)
            if val is not None and (best_val is None or val > best_val):
                best, best_val = k, val
        return best, best_val

    points = []
    bounds = [segments[0].z_a] + [s.z_b for s in segments] if pieces else []
    for j, z in enumerate(bounds):
        dom, val = max_at(z)
        if j == 0 or j == len(bounds) - 1:
            kind = "endpoint"
        elif segments[j - 1].dominating == segments[j].dominating:
            kind = "corner"
        else:
            kind = "crossing"
        # value is the max obstruction; the label says whether the volume is larger
        if val is None:
            points.append(EnvelopePoint(z, kind, vol(b, z), VOLUME))
        else:
            points.append(EnvelopePoint(z, kind, val, VOLUME if vol(b, z) > val else dom))
    return Envelope(b, z_lo, z_hi, labels, points, segments)


def staircase_profile(sc: PreStaircase, kappa_max: int) -> Envelope:
    """Envelope at b = b_inf of the geometric steps 1..kappa_max of a staircase."""
    b = sc.limits().b_inf
    steps = sc.extend(max(kappa_max - 1, 0)).steps
    chosen = [(k, c) for k, c in enumerate(steps)
              if 1 <= k <= kappa_max and c.geometric and (c.d - c.m * b).sign() > 0]
    if not chosen:
        raise DomainError("no geometric steps to profile")
    centers = [Fraction(c.p, c.q) for _, c in chosen]
    lo, hi = min(centers), max(centers)
    if lo == hi:
        lo, hi = lo - 1, hi + 1
    env = envelope([c for _, c in chosen], b, lo, hi)
    env.corners = [(k, QuadExt(Fraction(c.p, c.q)), c.p / (c.d - c.m * b)) for k, c in chosen]
    return env


# serialization

def _z_columns(z: QuadExt) -> tuple[str, str]:
    if z.is_rational():
        return str(z.a.numerator), str(z.a.denominator)
    return str(z), ""


def _value_decimal(value, digits: int = 30) -> str:
    return str(value.to_decimal(digits))


def _dominating_name(env: Envelope, dom) -> str:
    return VOLUME if dom == VOLUME else env.labels[dom]


def _exact(value) -> str:
    if isinstance(value, PositiveRoot):
        return f"sqrt({value.square})"
    return str(value)


def to_records(env: Envelope) -> dict:
    return {
        "b": str(env.b),
        "z_lo": str(env.z_lo),
        "z_hi": str(env.z_hi),
        "classes": env.labels,
        "points": [{"z": str(p.z), "kind": p.kind, "value": _exact(p.value),
                    "dominating": _dominating_name(env, p.dominating)} for p in env.points],
        "segments": [{"z_a": str(s.z_a), "z_b": str(s.z_b),
                      "dominating": _dominating_name(env, s.dominating),
                      "slope": None if s.slope is None else str(s.slope),
                      "intercept": None if s.intercept is None else str(s.intercept)}
                     for s in env.segments],
        "corners": [{"kappa": k, "z": str(z), "value": str(v)} for k, z, v in env.corners],
    }


def emit(env: Envelope, fmt: str, digits: int = 30) -> str:
    """Render an envelope as ``csv``, ``json`` or ``svg`` text."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["z_num", "z_den", "kind", "value_decimal", "dominating_class"])
        for p in env.points:
            num, den = _z_columns(p.z)
            writer.writerow([num, den, p.kind, _value_decimal(p.value, digits),
                             _dominating_name(env, p.dominating)])
        return buf.getvalue()
    if fmt == "json":
        return json.dumps(to_records(env), indent=2) + "\n"
    if fmt == "svg":
        from .plotting import envelope_svg

        return envelope_svg(env)
    raise ValueError(f"unknown format {fmt!r}")


def parse_window(z_lo, z_hi) -> tuple[Fraction, Fraction]:
    return as_fraction(z_lo), as_fraction(z_hi)
