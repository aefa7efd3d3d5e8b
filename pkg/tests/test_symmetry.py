from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qpstairs.accum import acc_inv
from qpstairs.classes import QuasiPerfect, from_pq
from qpstairs.errors import NoSolution, ParseError
from qpstairs.symmetry import (IDENTITY, INF, R, S, GroupElem, Mat2, S_power, base_blocking_U,
                               deg_matrix_B, deg_matrix_refl, parse_group_elem, principal_class,
                               r_coeff, refl, s_coeff, sharp, v, w, y_seq)

elems = st.builds(GroupElem, st.integers(0, 6), st.integers(0, 1))


def test_relations():
    assert S @ R == R @ S.inverse()
    assert R @ R == IDENTITY and R.det() == -1 and S.det() == 1
    for k in range(-3, 10):
        assert S ** k == S_power(k)


def test_y_v_w():
    assert [y_seq(k) for k in range(7)] == [0, 1, 6, 35, 204, 1189, 6930]
    assert v(1) is INF and v(2) == 6
    assert w(1) == 7 and w(2) == Fraction(41, 7)
    for k in range(2, 13):
        assert w(k) < v(k) < w(k - 1)
        assert y_seq(k) ** 2 - y_seq(k + 1) * y_seq(k - 1) == 1


def test_reflections():
    assert refl(2) == Mat2(35, -204, 6, -35) == S @ R
    assert refl(2).act(7) == Fraction(41, 7) and refl(2).act(Fraction(41, 7)) == 7
    for i in range(2, 8):
        T = refl(i)
        assert T == parse_group_elem(f"R_{{v_{i}}}").matrix
        assert T @ T == IDENTITY
        assert T.act(v(i)) == v(i)
        assert T.act(w(i)) == w(i - 1)
        assert T == S_power(i - 2) @ R @ S_power(-(i - 1))


def test_parse():
    assert parse_group_elem("S^3 R") == GroupElem(3, 1)
    assert parse_group_elem("R") == GroupElem(0, 1)
    assert parse_group_elem("S") == GroupElem(1, 0)
    assert parse_group_elem("id") == GroupElem(0, 0)
    assert parse_group_elem("S^2 R S") == GroupElem(1, 1)
    with pytest.raises(ParseError):
        parse_group_elem("R S")
    with pytest.raises(ParseError):
        parse_group_elem("T")


def test_sharp_examples():
    B0 = base_blocking_U(0)
    assert sharp(GroupElem(1), B0).as_tuple() == (15, 4, 35, 6, 3, -1)
    assert sharp(GroupElem(0, 1), base_blocking_U(1)).as_tuple() == (5, 0, 13, 2, 5, -1)
    assert sharp(GroupElem(1), from_pq(5, 1)).as_tuple() == (13, 5, 29, 5, 2, 1)


@given(elems, elems, st.integers(0, 10))
def test_sharp_composes(T1, T2, n):
    if T1.delta and T2.i > T1.i:
        return
    c = base_blocking_U(n)
    assert sharp(T1 * T2, c) == sharp(T1, sharp(T2, c))
    assert (T1 * T2).matrix == T1.matrix @ T2.matrix


@given(elems, st.integers(6, 400), st.integers(1, 60))
def test_sharp_preserves_sigma_and_t(T, p, q):
    try:
        c = from_pq(p, q)
    except (NoSolution, ValueError):
        return
    img = sharp(T, c)
    assert img.t == c.t
    assert img.p ** 2 - 6 * img.p * img.q + img.q ** 2 == p * p - 6 * p * q + q * q


def closed_form_degree(T: GroupElem) -> Mat2:
    """Oracle from the images of (3,2) and (1,1)."""
    i, s = T.i, (-1) ** T.i
    if T.delta == 0:
        yy = y_seq(i + 2) + y_seq(i + 1)
        c1 = (Fraction(3 * yy + 3 * s, 8), Fraction(yy + 9 * s, 8))
        c2 = (s_coeff(i), r_coeff(i))
    else:
        yy = y_seq(i + 1) + y_seq(i)
        c1 = (Fraction(3 * yy - 3 * s, 8), Fraction(yy - 9 * s, 8))
        c2 = (s_coeff(i + 1), r_coeff(i + 1))
    img = Mat2(c1[0], c2[0], c1[1], c2[1])
    return img @ Mat2(3, 1, 2, 1).inverse()


def test_degree_matrices_frozen():
    expected = {
        GroupElem(1): Mat2(5, 0, 2, -1),
        GroupElem(2): Mat2(28, 3, 9, 2),
        GroupElem(3): Mat2(164, 15, 55, 4),
        GroupElem(4): Mat2(955, 90, 318, 31),
        GroupElem(0, 1): Mat2(-10, 15, -3, 4),
        GroupElem(1, 1): Mat2(-59, 90, -20, 31),
    }
    for T, M in expected.items():
        assert deg_matrix_B(T) == M
    assert deg_matrix_B(GroupElem(4)) != deg_matrix_B(GroupElem(2)) ** 2


@pytest.mark.parametrize("i", range(0, 9))
@pytest.mark.parametrize("delta", [0, 1])
def test_degree_matrices_closed_form(i, delta):
    T = GroupElem(i, delta)
    M = deg_matrix_B(T)
    assert M == closed_form_degree(T)
    sign = -1 if (i + delta) % 2 else 1
    assert M.apply_vec(3, 1) == (sign * M.det() * 3, sign * M.det() * 1)
    expected_det = (-1) ** i * (y_seq(i + 2 + delta - 1) - y_seq(i + delta))
    assert M.det() == expected_det
    if delta == 0 and i >= 2:
        P = principal_class(i - 2)
        assert (M.b, M.d) == (P.d, P.m)


def test_s_r_ratio_is_center_parameter():
    for i in range(1, 8):
        branch = "U" if i % 2 == 0 else "L"
        assert Fraction(r_coeff(i), s_coeff(i)) == acc_inv(y_seq(i + 1), y_seq(i), branch)


@pytest.mark.parametrize("i", range(2, 8))
def test_reflection_degree_maps(i):
    B = deg_matrix_refl(i, "B")
    assert B @ B == IDENTITY
    assert B.apply_vec(s_coeff(i - 1), r_coeff(i - 1)) == (s_coeff(i - 1), r_coeff(i - 1))
    assert B.apply_vec(3, 1) == (-3, -1)
    P = deg_matrix_refl(i, "P")
    assert P.det() == -Fraction(y_seq(i + 1) - y_seq(i), y_seq(i - 1) - y_seq(i - 2))


def test_reflection_degree_examples():
    assert deg_matrix_refl(2, "B") == Mat2(4, -15, 1, -4)
    P = deg_matrix_refl(2, "P")
    assert P == Mat2(-59, 90, -20, 31) and P.det() == -29
    assert P.apply_vec(3, 2) == (3, 2)


@pytest.mark.parametrize("i", range(0, 8))
def test_principal_classes(i):
    assert principal_class(i) == sharp(GroupElem(i), base_blocking_U(0))
