from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qpstairs.accum import (ACC_AT_ZERO, ACC_MIN, acc, acc_equation_check, acc_inv,
                            consecutive_pair_parameters, vol)
from qpstairs.classes import sigma
from qpstairs.errors import DomainError
from qpstairs.exact import QuadExt
from qpstairs.symmetry import y_seq

params = st.fractions(min_value=0, max_value=Fraction(99, 100), max_denominator=200)


def test_acc_values():
    assert acc(Fraction(1, 3)) == QuadExt(3, 2, 2) == ACC_MIN
    assert acc(Fraction(1, 5)) == 6
    assert acc(Fraction(5, 11)) == 6
    assert acc(0) == ACC_AT_ZERO


def test_acc_inv_values():
    assert acc_inv(6, 1, "U") == Fraction(5, 11)
    assert acc_inv(6, 1, "L") == Fraction(1, 5)
    assert acc_inv(7, 1, "U") == QuadExt(Fraction(21, 71), Fraction(16, 71), 2)
    with pytest.raises(DomainError):
        acc_inv(5, 1, "U")
    with pytest.raises(DomainError):
        acc_inv(7, 1, "L")  # beyond acc(0)


def test_consecutive_pairs():
    assert consecutive_pair_parameters(35, 6) == (Fraction(11, 31), Fraction(19, 61))
    assert consecutive_pair_parameters(204, 35) == (Fraction(121, 359), Fraction(59, 179))
    for k in range(2, 9):
        p, q = y_seq(k + 1), y_seq(k)
        up, lo = consecutive_pair_parameters(p, q)
        assert acc_inv(p, q, "U") == up and acc(up) == Fraction(p, q)
        assert acc_inv(p, q, "L") == lo and acc(lo) == Fraction(p, q)


def test_rational_preimages_only_at_consecutive_y():
    ys = {(y_seq(k + 1), y_seq(k)) for k in range(1, 10)}
    for q in range(1, 400):
        for p in range(6 * q, 7 * q):
            if sigma(p, q) == 1:
                assert (p, q) in ys


@given(params)
def test_acc_equation_and_volume(b):
    z = acc(b)
    assert z >= ACC_MIN
    assert acc_equation_check(b, z)
    assert vol(b, z).equals((1 + z) / (3 - b))


@given(params)
def test_inverse_branches(b):
    z = acc(b)
    if z.is_rational() and b != Fraction(1, 3):
        p, q = z.a.numerator, z.a.denominator
        branch = "U" if b > Fraction(1, 3) else "L"
        assert acc_inv(p, q, branch) == b


@given(st.integers(6, 3000), st.integers(1, 500))
def test_round_trip_from_centers(p, q):
    if Fraction(p, q) <= ACC_MIN:
        return
    for branch in ("U", "L"):
        try:
            b = acc_inv(p, q, branch)
        except DomainError:
            assert branch == "L" and Fraction(p, q) > ACC_AT_ZERO
            continue
        assert acc_equation_check(b, Fraction(p, q))
        assert (b > Fraction(1, 3)) == (branch == "U")
        assert 0 <= b < 1


def test_equation_check_example():
    b = QuadExt(Fraction(11, 10), Fraction(-1, 10), 21)
    z = QuadExt(Fraction(7, 2), Fraction(5, 6), 21)
    assert acc_equation_check(b, z)
    assert not acc_equation_check(b, z + 1)


def test_vol():
    assert vol(0, 1).equals(1)
    assert vol(Fraction(1, 2), 3).equals(2)
    assert vol(Fraction(1, 2), 3) > QuadExt(1, 1, 2) - 1
    with pytest.raises(DomainError):
        vol(1, 2)
