import json
import math

import pytest
from hypothesis import given, strategies as st

from qpstairs.classes import (ClassVector, QuasiPerfect, from_pq, is_quasi_perfect, make_class,
                              sigma, to_vector)
from qpstairs.errors import DomainError, InvalidClass, NoSolution


def brute_force(p, q):
    """Oracle: search (d, m) directly from 3d = p+q+m and d^2 - m^2 = pq - 1."""
    found = []
    for m in range(-p - q, p + q + 1):
        if (p + q + m) % 3:
            continue
        d = (p + q + m) // 3
        if d * d - m * m == p * q - 1:
            found.append((d, m))
    return found


def test_examples():
    assert from_pq(6, 1).as_tuple() == (3, 2, 6, 1, 3, 1)
    assert from_pq(2, 1).as_tuple() == (1, 0, 2, 1, 1, -1)
    assert from_pq(5, 1).as_tuple() == (2, 0, 5, 1, 2, -1)
    with pytest.raises(NoSolution):
        from_pq(7, 2)
    with pytest.raises(NoSolution):
        from_pq(3, 1)  # t = 0


def test_formal_tuples():
    B0 = QuasiPerfect(0, -1, 1, 0, 3, -1)
    assert not B0.geometric
    E = QuasiPerfect(-2, 0, -5, -1, 2, 1)
    assert not E.geometric and (-E).as_tuple() == (2, 0, 5, 1, 2, -1)
    with pytest.raises(InvalidClass):
        QuasiPerfect(3, 2, 6, 1, 3, -1)
    with pytest.raises(InvalidClass):
        make_class(7, 1, 2, 1)


def test_json_round_trip():
    c = from_pq(29, 4)
    rec = c.to_json()
    assert set(rec) == {"d", "m", "p", "q", "t", "eps", "geometric"}
    assert QuasiPerfect.from_json(json.dumps(rec)) == c


@given(st.integers(2, 400), st.integers(1, 399))
def test_from_pq_agrees_with_brute_force(p, q):
    if not (p > q and math.gcd(p, q) == 1):
        return
    try:
        c = from_pq(p, q)
    except NoSolution:
        sols = [(d, m) for d, m in brute_force(p, q) if sigma(p, q) + 8 > 0]
        assert not sols
        return
    assert (c.d, c.m) in brute_force(p, q)
    assert c.eps == (1 if 3 * c.m > c.d else -1)
    assert is_quasi_perfect(c.d, c.m, p, q)


@given(st.integers(0, 60))
def test_vector_identities(n):
    c = from_pq(2 * n + 6, 1)
    v = to_vector(c)
    assert v.c1() == 1 and v.self_intersection() == -1
    assert sum(v.coeffs) == 3 * c.d - 1


def test_to_vector_rejects_formal():
    with pytest.raises(DomainError):
        to_vector(QuasiPerfect(0, -1, 1, 0, 3, -1))
    assert str(ClassVector(3, (2, 1))) == "(3; 2, 1)"


def test_formal_tuples_have_no_center():
    formal = QuasiPerfect(-2, 0, -5, -1, 2, 1)
    assert not formal.geometric
    with pytest.raises(DomainError):
        formal.center
    assert QuasiPerfect(1, 0, 2, 1, 1, -1).center == 2
