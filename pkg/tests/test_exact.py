from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from realehrhart import exact

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)
positive = st.fractions(min_value=F(1, 30), max_value=100, max_denominator=30)
small_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.fractions(-5, 5, max_denominator=4), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


@pytest.mark.parametrize("text,value", [("3", F(3)), ("-7/3", F(-7, 3)), ("−1/2", F(-1, 2)), (" 4/6 ", F(2, 3))])
def test_parse_rational(text, value):
    assert exact.parse_rational(text) == value


@pytest.mark.parametrize("text", ["1/0", "", "a/b", "1.5.2"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        exact.parse_rational(text)


def test_format_rational():
    assert exact.format_rational(F(4)) == "4"
    assert exact.format_rational(F(-3, 6)) == "-1/2"


def test_rank_examples():
    assert exact.rank(exact.identity(2)) == 2
    assert exact.rank([[0] * 3] * 3) == 0
    # columns are the tetrahedron vertices
    assert exact.rank([[0, 1, 1, 0], [0, 1, 0, 1], [0, 0, 1, 1]]) == 3


def test_solve_consistent_examples():
    assert exact.solve_consistent(exact.identity(2), (1, 2)) == (1, 2)
    assert exact.solve_consistent([[1], [1]], (1, 2)) is None
    A = [[0, 1, 1, 0], [0, 1, 0, 1], [0, 0, 1, 1]]
    u = exact.solve_consistent(A, (1, 1, 1))
    assert exact.matvec(A, u) == (1, 1, 1)
    with pytest.raises(ValueError):
        exact.solve_consistent(A, (1, 1))


def test_left_inverse_examples():
    assert exact.left_inverse(exact.identity(3)) == exact.identity(3)
    assert exact.left_inverse([[1], [1]]) == ((F(1, 2), F(1, 2)),)
    B = [[0, 1, 1, 0], [0, 1, 0, 1], [0, 0, 1, 1], [1, 1, 1, 1]]
    h = F(1, 2)
    assert exact.left_inverse(B) == ((-h, -h, -h, 1), (h, h, -h, 0), (h, -h, h, 0), (-h, h, h, 0))
    with pytest.raises(ValueError, match="not full column rank"):
        exact.left_inverse([[1, 2], [2, 4]])


@pytest.mark.parametrize("q,fl,ce", [(F(7, 3), (2, F(1, 3)), (3, F(-2, 3))),
                                     (F(-7, 3), (-3, F(2, 3)), (-2, F(-1, 3))),
                                     (F(5), (5, F(0)), (5, F(0)))])
def test_floor_ceil_examples(q, fl, ce):
    assert exact.floor_frac(q) == fl
    assert exact.ceil_frac(q) == ce


def test_rational_lcm_examples():
    assert exact.rational_lcm(F(1), F(1)) == 1
    assert exact.rational_lcm(F(1, 2), F(1, 3)) == 1
    assert exact.rational_lcm(F(2), F(3)) == 6
    with pytest.raises(ValueError):
        exact.rational_lcm(F(0), F(1))


@given(rationals)
def test_floor_ceil_decompositions(q):
    fl, frac = exact.floor_frac(q)
    ce, ang = exact.ceil_frac(q)
    assert fl + frac == q and 0 <= frac < 1
    assert ce + ang == q and -1 < ang <= 0
    assert exact.floor_frac(-q)[1] == -ang


@given(positive, positive)
def test_rational_lcm_is_least_common_multiple(a, b):
    m = exact.rational_lcm(a, b)
    assert (m / a).denominator == 1 and (m / b).denominator == 1
    # any common multiple is a multiple of m
    assert ((a * b * a.denominator * b.denominator) / m).denominator == 1


@given(small_matrices)
def test_left_inverse_when_full_column_rank(m):
    if exact.rank(m) == len(m[0]):
        L = exact.left_inverse(m)
        assert exact.matmul(L, m) == exact.identity(len(m[0]))
    else:
        with pytest.raises(ValueError):
            exact.left_inverse(m)


@given(small_matrices, st.data())
def test_solve_consistent_contract(m, data):
    b = data.draw(st.lists(st.fractions(-5, 5, max_denominator=3), min_size=len(m), max_size=len(m)))
    u = exact.solve_consistent(m, b)
    if u is None:
        augmented = [list(row) + [x] for row, x in zip(m, b)]
        assert exact.rank(augmented) > exact.rank(m)
    else:
        assert exact.matvec(m, u) == tuple(b)


@given(small_matrices)
def test_det_matches_rank(m):
    if len(m) == len(m[0]):
        assert (exact.det(m) != 0) == (exact.rank(m) == len(m))
