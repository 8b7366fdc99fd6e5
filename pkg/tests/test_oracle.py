import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from realehrhart import CountQuery, Kind, RationalSimplex, barycentric, brute_count, random_polytope, triangulate
from realehrhart.oracle import brute_count_cell, sample_grid
from realehrhart.simplex import BudgetExceeded

from strategies import polytopes


def test_brute_count_examples(tetra_polytope, square):
    assert brute_count(CountQuery(tetra_polytope, 1, Kind.CLOSED)) == 4
    assert brute_count(tetra_polytope, 2, "open") == 1
    assert brute_count(square, F(3, 2)) == 4
    assert brute_count(square, 0) == 1


def test_count_query_validation(square):
    with pytest.raises(ValueError):
        CountQuery(square, -1)
    with pytest.raises(ValueError):
        CountQuery(square, 0, "open")


def test_brute_count_budget(square):
    with pytest.raises(BudgetExceeded):
        brute_count(square, 1000, budget=1000)


def test_barycentric_examples(tetra):
    assert barycentric(tetra, (0, 0, 0)) == (1, 0, 0, 0)
    doubled = RationalSimplex([tuple(2 * x for x in v) for v in tetra.vertices])
    assert barycentric(doubled, (1, 1, 1)) == (F(1, 4),) * 4
    segment = RationalSimplex([(0, 0), (1, 1)])
    assert barycentric(segment, (1, 0)) is None


def test_random_polytope_contract():
    assert random_polytope(5, 2, 5, 3, 3) == random_polytope(5, 2, 5, 3, 3)
    seg = random_polytope(1, 1, 2, 3, 4)
    assert seg.dim == 1 and len(seg.vertices) == 2
    for seed in range(10):
        P = random_polytope(seed, 2, 5, 3, 3)
        assert all(x.denominator <= 3 and abs(x) <= 3 for v in P.vertices for x in v)
    with pytest.raises(ValueError):
        random_polytope(0, 0, 3, 3, 3)


def test_sample_grid_mixes_kinds():
    ts = sample_grid([F(0), F(1, 2)], F(1), F(3), 9, random.Random(0))
    assert all(0 < t <= 3 for t in ts)
    assert any(t.denominator == 1 for t in ts) and any(t.denominator == 4 for t in ts)


@given(polytopes(), st.integers(1, 12))
def test_monotone_when_origin_inside(P, steps):
    if not P.contains_origin():
        return
    dec = triangulate(P)
    ts = [F(k, 4) for k in range(steps + 1)]
    counts = [brute_count(dec, t) for t in ts]
    assert counts == sorted(counts)


@given(polytopes(max_ambient=3, max_points=4))
def test_cell_counts_split_closed_and_open(P):
    dec = triangulate(P)
    for t in (F(1, 2), F(2), F(7, 3)):
        boundary = sum(brute_count_cell(c.simplex, t, Kind.OPEN) for c in dec.cells if c.on_boundary)
        assert brute_count(dec, t, "closed") - brute_count(dec, t, "open") == boundary
