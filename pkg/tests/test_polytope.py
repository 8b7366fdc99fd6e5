from fractions import Fraction as F

import pytest
from hypothesis import given

from realehrhart import Kind, RationalPolytope, polytope_quasi, simplex_coefficients, triangulate, volume
from realehrhart.oracle import brute_count, brute_count_cell
from realehrhart.polytope import extreme_points, polytope_binomial_eval, polytope_reciprocity_check

from strategies import polytopes


def counts_by_dim(dec, boundary):
    out = {}
    for c in dec.cells:
        if c.on_boundary == boundary:
            out[c.dim] = out.get(c.dim, 0) + 1
    return out


def test_simplex_triangulates_to_its_faces(tetra_polytope):
    dec = triangulate(tetra_polytope)
    assert len(dec.cells) == 2**4 - 1
    assert [c.indices for c in dec.interior_cells] == [(0, 1, 2, 3)]


def test_unit_square_decomposition(square):
    dec = triangulate(square)
    assert counts_by_dim(dec, boundary=False) == {1: 1, 2: 2}
    assert counts_by_dim(dec, boundary=True) == {0: 4, 1: 4}
    assert dec.euler_characteristic() == 1
    assert dec.euler_characteristic(interior_only=True) == 1


def test_single_point():
    P = RationalPolytope([(2,)])
    dec = triangulate(P)
    assert len(dec.cells) == 1 and not dec.cells[0].on_boundary
    assert P.denominator == F(1, 2)
    for kind in Kind:
        q = polytope_quasi(P, kind)
        assert [q(t) for t in (F(1, 2), 1, F(3, 2), 2)] == [1, 1, 1, 1]
        assert q(F(1, 4)) == 0


def test_non_vertex_generators_are_dropped():
    P = RationalPolytope([(0, 0), (2, 0), (0, 2), (2, 2), (1, 1), (1, 0), (0, 0)])
    assert sorted(P.vertices) == [(0, 0), (0, 2), (2, 0), (2, 2)]
    assert P.denominator == F(1, 2)
    assert extreme_points([(0,), (F(1, 2),), (3,)]) == [(0,), (3,)]


def test_polytope_of_simplex_equals_simplex_coefficients(tetra_polytope):
    for kind in Kind:
        assert polytope_quasi(tetra_polytope, kind).equivalent(simplex_coefficients(tetra_polytope.as_simplex(), kind))


def test_unit_square_values(square):
    closed, open_ = polytope_quasi(square, "closed"), polytope_quasi(square, "open")
    assert [closed(m) for m in range(7)] == [(m + 1) ** 2 for m in range(7)]
    assert open_(2) == 1
    assert closed(F(3, 2)) == 4
    assert open_(-2) == 9 == closed(2)


def test_unit_square_coefficients(square):
    q = polytope_quasi(square, "closed")
    c1 = q.coeffs[1]
    assert len(c1.pieces) == 1 and c1.pieces[0][1].coeffs == (2, -2)
    assert q.coeffs[2].pieces[0][1].coeffs == (1,)


def test_volume_examples(tetra_polytope, square):
    assert volume(tetra_polytope) == F(1, 3)
    assert volume(square) == 1
    assert volume(RationalPolytope([(0,), (F(1, 2),)])) == F(1, 2)
    with pytest.raises(ValueError, match="relative volume unsupported"):
        volume(RationalPolytope([(0, 0), (1, 1)]))


def test_reciprocity_examples(tetra_polytope, square):
    assert polytope_reciprocity_check(tetra_polytope, [1]).passed
    assert polytope_quasi(tetra_polytope, "open")(-1) == -4
    report = polytope_reciprocity_check(square, [0, 2, F(1, 3)])
    assert report.passed and report.checked == 3


def test_lower_dimensional_polytope():
    P = RationalPolytope([(0, 0, 0), (1, 1, 0), (F(1, 2), 0, 0)])
    assert P.dim == 2 and P.ambient_dim == 3
    dec = triangulate(P)
    for t in (1, F(3, 2), 2, 4):
        assert polytope_quasi(P, "closed", decomposition=dec)(t) == brute_count(dec, t, "closed")
        assert polytope_quasi(P, "open", decomposition=dec)(t) == brute_count(dec, t, "open")


def test_as_simplex_rejects_square(square):
    with pytest.raises(ValueError, match="determined sets defined per simplex"):
        square.as_simplex()


def test_json_round_trip(square):
    again = RationalPolytope.from_dict(square.to_dict())
    assert (again.vertices, again.name) == (square.vertices, square.name)
    with pytest.raises(ValueError):
        RationalPolytope.from_dict({"vertices": [["1/0", "1"]]})
    with pytest.raises(ValueError):
        RationalPolytope.from_dict({"name": "x"})


@given(polytopes())
def test_triangulation_is_a_ball(P):
    dec = triangulate(P)
    assert dec.euler_characteristic() == 1
    # the relative interior has Euler characteristic (-1)^dim
    assert dec.euler_characteristic(interior_only=True) == (-1) ** P.dim
    assert all(not c.on_boundary for c in dec.maximal_cells)


@given(polytopes())
def test_cells_partition_the_lattice_points(P):
    dec = triangulate(P)
    d = P.denominator
    for t in (d / 2, d, 3 * d / 2, F(5, 2)):
        closed = brute_count(dec, t, "closed")
        assert closed == sum(brute_count_cell(c.simplex, t, "open") for c in dec.cells)
        boundary = sum(brute_count_cell(c.simplex, t, "open") for c in dec.cells if c.on_boundary)
        assert closed - brute_count(dec, t, "open") == boundary


@given(polytopes())
def test_assembled_quasi_identities(P):
    dec = triangulate(P)
    closed = polytope_quasi(P, "closed", decomposition=dec)
    open_ = polytope_quasi(P, "open", decomposition=dec)
    d = P.denominator
    for t in (F(1, 3), F(3, 2), 2 * d, F(7, 4)):
        assert closed(t) == brute_count(dec, t, "closed")
        assert open_(t) == brute_count(dec, t, "open")
        assert closed(t) - open_(t) == polytope_binomial_eval(dec, t, "closed") - polytope_binomial_eval(dec, t, "open")
        assert open_(-t) == (-1) ** P.dim * closed(t)
        for c in closed.coeffs + open_.coeffs:
            assert c(t) == c(t + d)


@given(polytopes())
def test_insertion_order_does_not_matter(P):
    for kind in Kind:
        a = polytope_quasi(P, kind, decomposition=triangulate(P, "lex"))
        b = polytope_quasi(P, kind, decomposition=triangulate(P, "reverse"))
        assert a.equivalent(b)
