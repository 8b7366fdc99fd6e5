"""Rational polytopes, placing triangulations and assembled quasi-polynomials.

A polytope is cut into pairwise disjoint relatively open simplices (all faces
of a triangulation).  The closed count sums every open cell; the interior
count sums only cells that are not on the relative boundary.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from . import exact
from .exact import Vector
from .quasipoly import PeriodicPiecewisePolynomial, QuasiPolynomial, combine, eval_binomial_formula, simplex_coefficients
from .report import CheckReport
from .simplex import DEFAULT_BUDGET, Kind, RationalSimplex, denominator


def affine_frame(points: Sequence[Vector]) -> tuple[Vector, list[Vector], list[int]]:
    """Origin, edge basis and the indices of an affinely independent subset, chosen greedily."""
    origin = points[0]
    basis: list[Vector] = []
    chosen = [0]
    for i, p in enumerate(points[1:], start=1):
        v = tuple(x - y for x, y in zip(p, origin))
        if exact.rank(basis + [v]) > len(basis):
            basis.append(v)
            chosen.append(i)
    return origin, basis, chosen


def affine_coordinates(p: Vector, origin: Vector, basis: Sequence[Vector]) -> Vector | None:
    """Coordinates of ``p`` in the frame, or None if ``p`` is off the affine hull."""
    rhs = tuple(x - y for x, y in zip(p, origin))
    if not basis:
        return () if all(x == 0 for x in rhs) else None
    return exact.solve_consistent(exact.transpose(basis), rhs)


def _orientation(facet: Sequence[Vector], x: Vector) -> int:
    base = facet[0]
    rows = [tuple(a - b for a, b in zip(v, base)) for v in facet[1:]]
    rows.append(tuple(a - b for a, b in zip(x, base)))
    value = exact.det(rows)
    return (value > 0) - (value < 0)


def placing_triangulation(coords: Sequence[Vector], order: Sequence[int]) -> list[tuple[int, ...]]:
    """Placing triangulation of full-dimensional points in ``Q^n``.

    Points are inserted in ``order``; each new point is coned over the hull
    facets it sees strictly.  Points already inside the hull are skipped.
    """
    n = len(coords[order[0]])
    chosen = [order[0]]
    for i in order[1:]:
        if len(chosen) == n + 1:
            break
        edges = [tuple(a - b for a, b in zip(coords[j], coords[chosen[0]])) for j in chosen[1:] + [i]]
        if exact.rank(edges) == len(chosen):
            chosen.append(i)
    if len(chosen) != n + 1:
        raise ValueError("points are not full-dimensional")
    simplices = [tuple(sorted(chosen))]
    for i in order:
        if i in chosen:
            continue
        facet_owner: dict[tuple[int, ...], list[int]] = {}
        for s in simplices:
            for o in s:
                facet_owner.setdefault(tuple(v for v in s if v != o), []).append(o)
        visible = []
        for facet, opposite in facet_owner.items():
            if len(opposite) != 1:
                continue
            pts = [coords[v] for v in facet]
            side_new = _orientation(pts, coords[i])
            if side_new and side_new == -_orientation(pts, coords[opposite[0]]):
                visible.append(facet)
        simplices.extend(tuple(sorted(f + (i,))) for f in visible)
    return simplices


def _in_convex_hull(p: Vector, others: Sequence[Vector]) -> bool:
    origin, basis, _ = affine_frame(others)
    pc = affine_coordinates(p, origin, basis)
    if pc is None:
        return False
    coords = [affine_coordinates(q, origin, basis) for q in others]
    if not basis:
        return True
    order = sorted(range(len(coords)), key=lambda i: coords[i])
    for s in placing_triangulation(coords, order):
        lam = _barycentric_coords([coords[i] for i in s], pc)
        if lam is not None and all(x >= 0 for x in lam):
            return True
    return False


def _barycentric_coords(vertices: Sequence[Vector], p: Vector) -> Vector | None:
    rows = [list(col) for col in exact.transpose(vertices)] if vertices[0] else []
    rows.append([Fraction(1)] * len(vertices))
    return exact.solve_consistent(rows, tuple(p) + (Fraction(1),))


def extreme_points(points: Iterable[Sequence]) -> list[Vector]:
    """Vertices of ``conv(points)``: duplicates and hull-interior generators removed."""
    pts = sorted(set(exact.vector(p) for p in points))
    if len(pts) <= 1:
        return pts
    return [p for i, p in enumerate(pts) if not _in_convex_hull(p, pts[:i] + pts[i + 1:])]


@dataclass(frozen=True)
class RationalPolytope:
    points: tuple[Vector, ...]
    name: str = ""
    vertices: tuple[Vector, ...] = field(init=False)
    dim: int = field(init=False)
    ambient_dim: int = field(init=False)
    denominator: Fraction = field(init=False)

    def __post_init__(self):
        pts = tuple(exact.vector(p) for p in self.points)
        if not pts:
            raise ValueError("a polytope needs at least one point")
        if len({len(p) for p in pts}) != 1:
            raise ValueError("points live in different dimensions")
        verts = tuple(extreme_points(pts))
        _, basis, _ = affine_frame(verts)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "dim", len(basis))
        object.__setattr__(self, "ambient_dim", len(pts[0]))
        object.__setattr__(self, "denominator", denominator(verts))

    @property
    def is_simplex(self) -> bool:
        return len(self.vertices) == self.dim + 1

    def as_simplex(self) -> RationalSimplex:
        if not self.is_simplex:
            raise ValueError("determined sets defined per simplex")
        return RationalSimplex(self.vertices)

    def contains_origin(self) -> bool:
        zero = tuple(Fraction(0) for _ in range(self.ambient_dim))
        return zero in self.vertices or _in_convex_hull(zero, list(self.vertices))

    def to_dict(self) -> dict:
        return {"name": self.name, "vertices": [[exact.format_rational(x) for x in v] for v in self.vertices]}

    @classmethod
    def from_dict(cls, data: dict) -> "RationalPolytope":
        if not isinstance(data, dict) or "vertices" not in data:
            raise ValueError("polytope JSON needs a 'vertices' list")
        verts = data["vertices"]
        if not isinstance(verts, list) or not verts or not all(isinstance(v, list) for v in verts):
            raise ValueError("'vertices' must be a nonempty list of coordinate lists")
        return cls(tuple(tuple(exact.parse_rational(x) for x in v) for v in verts), name=str(data.get("name", "")))


@dataclass(frozen=True)
class OpenCell:
    simplex: RationalSimplex
    indices: tuple[int, ...]
    on_boundary: bool

    @property
    def dim(self) -> int:
        return self.simplex.dim


@dataclass(frozen=True)
class Decomposition:
    """Disjoint relatively open simplices whose union is the polytope."""

    vertices: tuple[Vector, ...]
    cells: tuple[OpenCell, ...]
    max_dim: int

    @property
    def maximal_cells(self) -> list[OpenCell]:
        return [c for c in self.cells if c.dim == self.max_dim]

    @property
    def interior_cells(self) -> list[OpenCell]:
        return [c for c in self.cells if not c.on_boundary]

    @property
    def boundary_facets(self) -> list[OpenCell]:
        return [c for c in self.cells if c.on_boundary and c.dim == self.max_dim - 1]

    def euler_characteristic(self, interior_only: bool = False) -> int:
        cells = self.interior_cells if interior_only else self.cells
        return sum((-1) ** c.dim for c in cells)

    def to_dict(self) -> dict:
        return {
            "vertices": [[exact.format_rational(x) for x in v] for v in self.vertices],
            "cells": [{"vertices": list(c.indices), "dim": c.dim, "on_boundary": c.on_boundary} for c in self.cells],
        }


def triangulate(P: RationalPolytope, order: str | Sequence[int] = "lex") -> Decomposition:
    """Placing triangulation of the vertex set, with every face as an open cell.

    ``order`` is ``"lex"``, ``"reverse"`` or an explicit insertion order of
    vertex indices.  Lower-dimensional polytopes are triangulated inside
    their affine hull.
    """
    verts = P.vertices
    n = P.dim
    if n == 0:
        return Decomposition(verts, (OpenCell(RationalSimplex(verts[:1]), (0,), False),), 0)
    origin, basis, _ = affine_frame(verts)
    coords = [affine_coordinates(v, origin, basis) for v in verts]
    if order == "lex":
        order = sorted(range(len(verts)), key=lambda i: verts[i])
    elif order == "reverse":
        order = sorted(range(len(verts)), key=lambda i: verts[i], reverse=True)
    maximal = placing_triangulation(coords, list(order))

    facet_count: dict[tuple[int, ...], int] = {}
    faces: set[tuple[int, ...]] = set()
    for s in maximal:
        for f in itertools.combinations(s, n):
            facet_count[f] = facet_count.get(f, 0) + 1
        for size in range(1, n + 2):
            faces.update(itertools.combinations(s, size))
    boundary_facets = [f for f, c in facet_count.items() if c == 1]
    boundary: set[tuple[int, ...]] = set()
    for f in boundary_facets:
        for size in range(1, n + 1):
            boundary.update(itertools.combinations(f, size))
    cells = tuple(
        OpenCell(RationalSimplex([verts[i] for i in f]), f, f in boundary)
        for f in sorted(faces, key=lambda f: (len(f), f))
    )
    return Decomposition(verts, cells, n)


def _open_cell_quasi(args) -> QuasiPolynomial:
    simplex, budget = args
    return simplex_coefficients(simplex, Kind.OPEN, budget)


def cell_quasis(cells: Sequence[OpenCell], budget: int = DEFAULT_BUDGET, jobs: int = 1) -> list[QuasiPolynomial]:
    work = [(c.simplex, budget) for c in cells]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_open_cell_quasi, work))
    return [_open_cell_quasi(w) for w in work]


def polytope_quasi(P: RationalPolytope, kind: Kind | str = Kind.CLOSED, budget: int = DEFAULT_BUDGET,
                   jobs: int = 1, decomposition: Decomposition | None = None) -> QuasiPolynomial:
    """``L(P, t)`` (closed) or ``L(interior of P, t)`` (open) as a quasi-polynomial.

    ``c_k`` is the sum of ``c_k`` of the open cells of dimension >= k, taken
    over all cells (closed) or the cells off the boundary (open), on the
    rational lcm of the cell periods.
    """
    kind = Kind.parse(kind)
    dec = decomposition or triangulate(P)
    cells = dec.cells if kind is Kind.CLOSED else dec.interior_cells
    quasis = cell_quasis(cells, budget, jobs)
    period = reduce(exact.rational_lcm, (q.period for q in quasis))
    coeffs = []
    for k in range(P.dim + 1):
        funcs = [q.coeffs[k] for q in quasis if q.dim >= k]
        if funcs:
            coeffs.append(combine(funcs, period=period, kind=kind))
        else:
            coeffs.append(PeriodicPiecewisePolynomial.constant(0, period, kind))
    return QuasiPolynomial(P.dim, kind, tuple(coeffs))


def polytope_binomial_eval(dec: Decomposition, t, kind: Kind | str = Kind.CLOSED,
                           budget: int = DEFAULT_BUDGET) -> Fraction:
    """Sum of the open-simplex binomial formulas over the relevant cells."""
    kind = Kind.parse(kind)
    cells = dec.cells if kind is Kind.CLOSED else dec.interior_cells
    return sum((eval_binomial_formula(c.simplex, t, Kind.OPEN, budget=budget) for c in cells), Fraction(0))


def volume(P: RationalPolytope, decomposition: Decomposition | None = None) -> Fraction:
    if P.dim != P.ambient_dim:
        raise ValueError("relative volume unsupported")
    dec = decomposition or triangulate(P)
    total = Fraction(0)
    for cell in dec.maximal_cells:
        v0 = cell.simplex.vertices[0]
        rows = [tuple(a - b for a, b in zip(v, v0)) for v in cell.simplex.vertices[1:]]
        total += abs(exact.det(rows)) if rows else Fraction(1)
    return total / math.factorial(P.dim)


def polytope_reciprocity_check(P: RationalPolytope, samples: Iterable, closed: QuasiPolynomial | None = None,
                               open_: QuasiPolynomial | None = None,
                               budget: int = DEFAULT_BUDGET) -> CheckReport:
    """``L(interior, -t) = (-1)^dim L(P, t)`` at every sampled ``t``."""
    closed = closed or polytope_quasi(P, Kind.CLOSED, budget)
    open_ = open_ or polytope_quasi(P, Kind.OPEN, budget)
    sign = (-1) ** P.dim
    report = CheckReport("reciprocity")
    for t in samples:
        t = Fraction(t)
        lhs, rhs = open_(-t), sign * closed(t)
        report.record(lhs == rhs, polytope=P.name or P.vertices, t=t, open_at_minus_t=lhs, signed_closed=rhs)
    return report
