import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from qpstairs.cfrac import ContinuedFraction, cf_expand, cf_value, parse_cf, weight_expansion
from qpstairs.errors import DomainError, ParseError

coprime = st.tuples(st.integers(1, 5000), st.integers(1, 5000)).map(
    lambda t: (max(t), min(t))).filter(lambda t: math.gcd(*t) == 1)


def weights_by_rule(p, q):
    """Oracle: start with (1, z) for z = p/q and repeatedly split off the smaller entry."""
    out = []
    big, small = Fraction(p, q), Fraction(1)
    while small:
        if big >= small:
            out.append(small)
            big -= small
        else:
            big, small = small, big
        if big < small:
            big, small = small, big
    return tuple(int(x * q) for x in out)


def test_examples():
    assert str(cf_expand(35, 6)) == "[5;1,5]"
    assert str(cf_expand(204, 35)) == "[5;1,4,1,5]"
    assert weight_expansion(35, 6).entries == (6, 6, 6, 6, 6, 5, 1, 1, 1, 1, 1)
    assert str(cf_expand(1, 1)) == "[1]"


def test_domain_errors():
    with pytest.raises(DomainError):
        cf_expand(2, 4)
    with pytest.raises(DomainError):
        cf_expand(1, 2)


@given(coprime)
def test_round_trip_and_canonical(pq):
    p, q = pq
    cf = cf_expand(p, q)
    assert cf_value(cf.coeffs) == (p, q)
    assert len(cf.coeffs) == 1 or cf.coeffs[-1] >= 2
    assert cf.canonical() == cf


@given(coprime)
def test_weight_invariants(pq):
    p, q = pq
    W = weight_expansion(p, q)
    assert sum(W) == p + q - 1
    assert sum(x * x for x in W) == p * q
    assert W.runs == cf_expand(p, q).coeffs
    assert W.entries[: p // q] == (q,) * (p // q)


@given(coprime)
def test_weight_matches_splitting_rule(pq):
    assert weight_expansion(*pq).entries == weights_by_rule(*pq)


def test_parse_blocks():
    assert parse_cf("[7;{5,1}^3,4]") == (7, 5, 1, 5, 1, 5, 1, 4)
    assert parse_cf("[ 5; 1, 5 ]") == (5, 1, 5)
    assert ContinuedFraction.parse("[5;1,5]").value() == Fraction(35, 6)
    assert ContinuedFraction((5, 1, 4, 1)).canonical().coeffs == (5, 1, 5)
    for bad in ("5;1", "[5;a]", "[5;{1,2]", "[0;1]"):
        with pytest.raises(ParseError):
            parse_cf(bad)


@given(st.lists(st.integers(1, 9), min_size=1, max_size=8))
def test_parse_render_round_trip(coeffs):
    cf = ContinuedFraction(tuple(coeffs))
    assert parse_cf(str(cf)) == cf.coeffs
