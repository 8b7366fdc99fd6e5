"""Brute-force lattice point counting, independent of the determined-set formulas."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import exact
from .exact import Vector
from .polytope import Decomposition, RationalPolytope, triangulate
from .simplex import DEFAULT_BUDGET, BudgetExceeded, Kind, RationalSimplex

_CHUNK = 1 << 16


@dataclass(frozen=True)
class CountQuery:
    target: Decomposition | RationalSimplex | RationalPolytope
    t: Fraction
    kind: Kind = Kind.CLOSED

    def __post_init__(self):
        object.__setattr__(self, "t", Fraction(self.t))
        object.__setattr__(self, "kind", Kind.parse(self.kind))
        if self.t < 0 or (self.kind is Kind.OPEN and self.t == 0):
            raise ValueError(f"lattice counts need t >= 0 (closed) or t > 0 (open), got {self.t}")


def barycentric(simplex: RationalSimplex, p: Sequence) -> Vector | None:
    """Affine coordinates of ``p`` over the simplex vertices, None off the affine hull."""
    p = exact.vector(p)
    if len(p) != simplex.ambient_dim:
        raise ValueError("point and simplex live in different dimensions")
    rows = [list(r) for r in simplex.vertex_matrix] + [[Fraction(1)] * (simplex.dim + 1)]
    return exact.solve_consistent(rows, p + (Fraction(1),))


class _AffineWeights:
    """Vectorised barycentric coordinates of ``p / t`` for integer points ``p``.

    ``weights(p)`` returns ``D * tn * lambda`` as integers, ``in_hull(p)``
    whether ``p / t`` lies on the affine hull.
    """

    def __init__(self, simplex: RationalSimplex, t: Fraction):
        M = [list(r) for r in simplex.vertex_matrix] + [[Fraction(1)] * (simplex.dim + 1)]
        L = exact.left_inverse(M)
        residual = [[x - int(i == j) for j, x in enumerate(row)] for i, row in enumerate(exact.matmul(M, L))]
        N = simplex.ambient_dim
        self.tn, self.td = t.numerator, t.denominator
        L_int, _ = exact.integer_scaled(L)
        R_int, _ = exact.integer_scaled(residual)
        self.L_p = np.array([r[:N] for r in L_int], dtype=object).reshape(len(L_int), N)
        self.L_1 = np.array([r[N] for r in L_int], dtype=object).reshape(-1, 1)
        self.R_p = np.array([r[:N] for r in R_int], dtype=object).reshape(len(R_int), N)
        self.R_1 = np.array([r[N] for r in R_int], dtype=object).reshape(-1, 1)
        big = max([1] + [abs(x) for row in L_int + R_int for x in row]) * (N + 1) * max(self.tn, self.td)
        self.dtype = np.int64 if big < 2**40 else object
        for name in ("L_p", "L_1", "R_p", "R_1"):
            setattr(self, name, getattr(self, name).astype(self.dtype))

    def weights(self, p: np.ndarray) -> np.ndarray:
        return self.L_p @ (p * self.td) + self.L_1 * self.tn

    def in_hull(self, p: np.ndarray) -> np.ndarray:
        return np.all(self.R_p @ (p * self.td) + self.R_1 * self.tn == 0, axis=0)


def _as_decomposition(target) -> Decomposition:
    if isinstance(target, Decomposition):
        return target
    if isinstance(target, RationalSimplex):
        target = RationalPolytope(target.vertices)
    return triangulate(target)


def _lattice_box(vertices: Sequence[Vector], t: Fraction, budget: int):
    N = len(vertices[0])
    lo = [math.ceil(min(v[i] for v in vertices) * t) for i in range(N)]
    hi = [math.floor(max(v[i] for v in vertices) * t) for i in range(N)]
    dims = [max(h - l + 1, 0) for l, h in zip(lo, hi)]
    size = math.prod(dims)
    if size > budget:
        raise BudgetExceeded(size, budget)
    return np.array(lo, dtype=np.int64).reshape(-1, 1), dims, size


def _iter_points(vertices, t, budget):
    lo, dims, size = _lattice_box(vertices, t, budget)
    for start in range(0, size, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, size))
        yield np.array(np.unravel_index(idx, dims), dtype=np.int64).reshape(len(dims), -1) + lo


def brute_count(query: CountQuery | Decomposition | RationalSimplex | RationalPolytope, t=None,
                kind: Kind | str = Kind.CLOSED, budget: int = DEFAULT_BUDGET) -> int:
    """Number of lattice points in ``tP`` (closed) or in ``t`` times the relative interior (open).

    Every integer point of the bounding box of the dilated vertices is tested
    against the maximal cells of a triangulation by exact barycentric
    coordinates; interior points are those on no boundary facet.
    """
    if not isinstance(query, CountQuery):
        query = CountQuery(query, t, kind)
    dec = _as_decomposition(query.target)
    t = query.t
    if t == 0:
        return 1
    maximal = dec.maximal_cells
    weights = [_AffineWeights(c.simplex, t) for c in maximal]
    facets = []
    if query.kind is Kind.OPEN:
        for f in dec.boundary_facets:
            owner = next(i for i, c in enumerate(maximal) if set(f.indices) <= set(c.indices))
            opposite = next(j for j, v in enumerate(maximal[owner].indices) if v not in f.indices)
            facets.append((owner, opposite))
    total = 0
    for p in _iter_points(dec.vertices, t, budget):
        p = p.astype(weights[0].dtype)
        on_hull = weights[0].in_hull(p)
        lams = [w.weights(p) for w in weights]
        inside = np.zeros(p.shape[1], dtype=bool)
        for lam in lams:
            inside |= np.all(lam >= 0, axis=0)
        inside &= on_hull
        for owner, opposite in facets:
            lam = lams[owner]
            inside &= ~(np.all(lam >= 0, axis=0) & (lam[opposite] == 0))
        total += int(inside.sum())
    return total


def brute_count_cell(simplex: RationalSimplex, t, kind: Kind | str = Kind.OPEN,
                     budget: int = DEFAULT_BUDGET) -> int:
    """Lattice points of ``t`` times a single closed or relatively open simplex."""
    kind = Kind.parse(kind)
    t = Fraction(t)
    if t == 0:
        return 1 if (kind is Kind.CLOSED or simplex.dim == 0) else 0
    w = _AffineWeights(simplex, t)
    total = 0
    for p in _iter_points(simplex.vertices, t, budget):
        p = p.astype(w.dtype)
        lam = w.weights(p)
        ok = np.all(lam >= 0, axis=0) if kind is Kind.CLOSED else np.all(lam > 0, axis=0)
        total += int((ok & w.in_hull(p)).sum())
    return total


def count_determined_at(simplex: RationalSimplex, level, kind: Kind | str = Kind.CLOSED,
                        budget: int = DEFAULT_BUDGET) -> int:
    """``#D(simplex, level)`` by solving for the unique ``u`` of every candidate lattice point."""
    kind = Kind.parse(kind)
    level = Fraction(level)
    d = simplex.denominator
    n, N = simplex.dim, simplex.ambient_dim
    B = [list(r) for r in simplex.vertex_matrix] + [[Fraction(1)] * (n + 1)]
    ranges = []
    for i in range(N):
        coords = [v[i] for v in simplex.vertices]
        lo = sum(min(Fraction(0), a) for a in coords) * d
        hi = sum(max(Fraction(0), a) for a in coords) * d
        ranges.append(range(math.ceil(lo), math.floor(hi) + 1))
    if math.prod(len(r) for r in ranges) > budget:
        raise BudgetExceeded(math.prod(len(r) for r in ranges), budget)
    count = 0
    for b in itertools.product(*ranges):
        u = exact.solve_consistent(B, tuple(Fraction(x) for x in b) + (level,))
        if u is None:
            continue
        if kind is Kind.CLOSED and all(0 <= x < d for x in u):
            count += 1
        elif kind is Kind.OPEN and all(0 < x <= d for x in u):
            count += 1
    return count


def random_polytope(seed: int, N: int, max_vertices: int, coord_bound: int, denom_bound: int,
                    full_dimensional: bool = True) -> RationalPolytope:
    """Reproducible random rational polytope in ``Q^N``.

    One common denominator ``q <= denom_bound`` is drawn per polytope, and
    coordinates are multiples of ``1/q`` in ``[-coord_bound, coord_bound]``.
    """
    if min(N, max_vertices, coord_bound, denom_bound) <= 0:
        raise ValueError("bounds must be positive")
    rng = random.Random(seed)
    while True:
        q = rng.randint(1, denom_bound)
        k = rng.randint(min(N + 1, max_vertices), max_vertices)
        pts = [tuple(Fraction(rng.randint(-coord_bound * q, coord_bound * q), q) for _ in range(N))
               for _ in range(k)]
        P = RationalPolytope(tuple(pts), name=f"random-{seed}")
        if not full_dimensional or P.dim == N:
            return P


def sample_grid(breakpoints: Sequence[Fraction], period: Fraction, upper: Fraction, count: int,
                rng: random.Random) -> list[Fraction]:
    """Sample of ``(0, upper]`` mixing tiled breakpoints, their midpoints and integers."""
    upper = Fraction(upper)
    pts = set()
    copies = math.ceil(upper / period)
    for m in range(copies + 1):
        for b in breakpoints:
            x = b + m * period
            if 0 < x <= upper:
                pts.add(x)
    pts.add(upper)
    ordered = sorted(pts | {Fraction(0)})
    mids = {(a + b) / 2 for a, b in zip(ordered, ordered[1:])}
    ints = {Fraction(i) for i in range(1, math.floor(upper) + 1)}
    groups = [sorted(pts), sorted(mids), sorted(ints)]
    out: list[Fraction] = []
    per = max(1, count // 3)
    for g in groups:
        out.extend(rng.sample(g, min(per, len(g))))
    rest = sorted((pts | mids | ints) - set(out))
    out.extend(rng.sample(rest, min(max(count - len(out), 0), len(rest))))
    return sorted(set(out))
