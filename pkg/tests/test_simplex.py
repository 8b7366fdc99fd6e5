import math
from fractions import Fraction as F

import pytest
from hypothesis import given

from realehrhart import Interval, Kind, RationalSimplex, StepFunction, determined_sets, step_eval
from realehrhart.oracle import count_determined_at
from realehrhart.polytope import volume, RationalPolytope
from realehrhart.simplex import BudgetExceeded, denominator, determined_sets_direct_open

from strategies import levels_near, simplices


def pieces(f: StepFunction):
    return [(str(iv), c) for iv, c in f.pieces]


def test_denominator_examples(tetra):
    assert tetra.denominator == 1
    assert denominator([(F(0),), (F(1, 2),)]) == 2
    assert denominator([(F(2),)]) == F(1, 2)
    assert denominator([(F(0), F(0))]) == 1


def test_simplex_rejects_dependent_vertices():
    with pytest.raises(ValueError, match="affinely independent"):
        RationalSimplex([(0, 0), (1, 1), (2, 2)])


def test_tetra_closed_step_function(tetra):
    f = determined_sets(tetra, Kind.CLOSED)
    assert f.domain == Interval(0, 4, True, False)
    assert f.pieces == ((Interval(0, 1, True, False), 1), (Interval(F(3, 2), F(5, 2), True, False), 1))


def test_tetra_open_step_function(tetra):
    f = determined_sets(tetra, Kind.OPEN)
    assert f.domain == Interval(0, 4, False, True)
    assert f.pieces == ((Interval(F(3, 2), F(5, 2), False, True), 1), (Interval(3, 4, False, True), 1))
    assert determined_sets_direct_open(tetra) == f


def test_unit_segment():
    seg = RationalSimplex([(0,), (1,)])
    assert pieces(determined_sets(seg, "closed")) == [("[0,1)", 1)]
    assert pieces(determined_sets(seg, "open")) == [("(1,2]", 1)]
    assert pieces(determined_sets_direct_open(seg)) == [("(1,2]", 1)]


def test_single_vertex_open_by_definition():
    # v * 2 integral with 0 < v <= 1/2 forces v = 1/2
    pt = RationalSimplex([(2,)])
    assert pt.denominator == F(1, 2)
    assert pieces(determined_sets_direct_open(pt)) == [("{1/2}", 1)]
    assert determined_sets(pt, "open") == determined_sets_direct_open(pt)


def test_step_eval_examples(tetra):
    f = determined_sets(tetra)
    assert step_eval(f, 2) == 1
    assert step_eval(f, F(5, 2)) == 0
    assert step_eval(f, -1) == 0
    assert step_eval(f, F(3, 2)) == 1 and step_eval(f, 1) == 0


def test_step_function_from_intervals_sums_and_merges():
    dom = Interval(0, 4)
    f = StepFunction.from_intervals(dom, [Interval(0, 2), Interval(1, 3), Interval.point(3), Interval(3, 4, False)])
    assert pieces(f) == [("[0,1)", 1), ("[1,2)", 2), ("[2,4)", 1)]
    assert StepFunction.from_dict(f.to_dict()) == f


def test_budget_exceeded():
    big = RationalSimplex([(0, 0), (40, 1), (1, 40)])
    with pytest.raises(BudgetExceeded, match="enumeration budget exceeded"):
        determined_sets(big, budget=100)


@given(simplices())
def test_reflection(s):
    total = (s.dim + 1) * s.denominator
    closed, open_ = determined_sets(s, "closed"), determined_sets(s, "open")
    for level in levels_near(closed, total):
        assert closed(level) == open_(total - level)


@given(simplices(max_ambient=2))
def test_direct_open_matches_reflection(s):
    assert determined_sets_direct_open(s) == determined_sets(s, "open")


@given(simplices())
def test_support_and_anchor(s):
    total = (s.dim + 1) * s.denominator
    closed, open_ = determined_sets(s, "closed"), determined_sets(s, "open")
    assert closed(0) >= 1
    assert closed(total) == 0 and closed(-F(1, 7)) == 0
    assert open_(0) == 0 and open_(total + F(1, 7)) == 0
    for iv, c in closed.pieces:
        assert c >= 1 and iv.lo >= 0 and iv.hi <= total


@given(simplices())
def test_linearly_independent_gives_point_pieces(s):
    if s.linearly_independent:
        assert all(iv.is_point for iv, _ in determined_sets(s).pieces)


@given(simplices(full_dimensional=True))
def test_level_sums_give_normalized_volume(s):
    n, d = s.dim, s.denominator
    vol = volume(RationalPolytope(s.vertices))
    want = math.factorial(n) * d**n * vol
    closed, open_ = determined_sets(s, "closed"), determined_sets(s, "open")
    for i in range(5):
        x = F(i, 5)
        assert sum(closed(d * k + d * x) for k in range(n + 1)) == want
        y = x - 1 if x else F(0)
        assert sum(open_(d * j + d * y) for j in range(1, n + 2)) == want


@given(simplices(max_ambient=2))
def test_algorithm_matches_per_level_solve(s):
    total = (s.dim + 1) * s.denominator
    for kind in (Kind.CLOSED, Kind.OPEN):
        f = determined_sets(s, kind)
        for level in levels_near(f, total)[:12]:
            assert f(level) == count_determined_at(s, level, kind)
