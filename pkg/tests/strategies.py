"""Hypothesis strategies for small rational simplices and polytopes."""
from fractions import Fraction

from hypothesis import assume
from hypothesis import strategies as st

from realehrhart import RationalPolytope, RationalSimplex, exact


@st.composite
def rational_points(draw, N, count, coord_bound=2, denom_bound=3):
    q = draw(st.integers(1, denom_bound))
    coord = st.integers(-coord_bound * q, coord_bound * q).map(lambda a: Fraction(a, q))
    return [tuple(draw(coord) for _ in range(N)) for _ in range(count)]


@st.composite
def simplices(draw, max_ambient=3, full_dimensional=False, coord_bound=2, denom_bound=3):
    N = draw(st.integers(1, max_ambient))
    n = N if full_dimensional else draw(st.integers(0, N))
    pts = draw(rational_points(N, n + 1, coord_bound, denom_bound))
    edges = [tuple(a - b for a, b in zip(p, pts[0])) for p in pts[1:]]
    assume(not edges or exact.rank(edges) == n)
    return RationalSimplex(pts)


@st.composite
def polytopes(draw, max_ambient=2, max_points=5, coord_bound=2, denom_bound=3):
    N = draw(st.integers(1, max_ambient))
    count = draw(st.integers(1, max_points))
    return RationalPolytope(draw(rational_points(N, count, coord_bound, denom_bound)))


def levels_near(f, top):
    """Jump points, their midpoints and a few nearby values of a step function."""
    pts = sorted(set(f.jump_points()) | {Fraction(0), Fraction(top)})
    out = set(pts)
    out |= {(a + b) / 2 for a, b in zip(pts, pts[1:])}
    out |= {Fraction(-1), Fraction(top) + 1}
    return sorted(out)
