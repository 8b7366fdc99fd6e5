"""Rational simplices and the step functions counting their determined sets.

For a simplex with vertices ``a_0..a_n`` and denominator ``d`` the closed
determined set at level ``l`` holds the lattice points ``sum u_j a_j`` with
``0 <= u_j < d`` and ``sum u_j = l``; the open one uses ``0 < v_j <= d``.
Their cardinalities are step functions of ``l``.
"""
from __future__ import annotations

import bisect
import enum
import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import exact
from .exact import Vector

DEFAULT_BUDGET = 10**7
_CHUNK = 1 << 16


class BudgetExceeded(RuntimeError):
    """Raised when a lattice enumeration box is larger than the allowed budget."""

    def __init__(self, size: int, budget: int):
        super().__init__(f"enumeration budget exceeded: box has {size} candidates (budget {budget})")
        self.size = size
        self.budget = budget


class Kind(enum.Enum):
    CLOSED = "closed"
    OPEN = "open"

    @classmethod
    def parse(cls, value: "Kind | str") -> "Kind":
        return value if isinstance(value, cls) else cls(str(value).lower())


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi or (self.lo == self.hi and not (self.lo_closed and self.hi_closed)):
            raise ValueError(f"empty interval {self}")

    @classmethod
    def point(cls, x) -> "Interval":
        return cls(x, x, True, True)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, x) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def shifted(self, delta) -> "Interval":
        return Interval(self.lo + delta, self.hi + delta, self.lo_closed, self.hi_closed)

    def reflected(self, total) -> "Interval":
        """Image under ``x -> total - x``."""
        return Interval(total - self.hi, total - self.lo, self.hi_closed, self.lo_closed)

    def __str__(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        if self.is_point:
            return "{" + str(self.lo) + "}"
        return f"{left}{self.lo},{self.hi}{right}"

    def to_dict(self) -> dict:
        return {
            "lo": exact.format_rational(self.lo),
            "hi": exact.format_rational(self.hi),
            "lo_closed": self.lo_closed,
            "hi_closed": self.hi_closed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Interval":
        return cls(
            exact.parse_rational(data["lo"]),
            exact.parse_rational(data["hi"]),
            bool(data["lo_closed"]),
            bool(data["hi_closed"]),
        )


@dataclass(frozen=True)
class StepFunction:
    """Nonnegative integer step function; zero off its pieces.

    ``pieces`` is sorted, pairwise disjoint and maximally merged.
    """

    domain: Interval
    pieces: tuple[tuple[Interval, int], ...]
    _starts: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_starts", tuple(iv.lo for iv, _ in self.pieces))

    @classmethod
    def from_intervals(cls, domain: Interval, intervals: Iterable[Interval]) -> "StepFunction":
        """Sum of indicator functions, in canonical form."""
        intervals = list(intervals)
        if not intervals:
            return cls(domain, ())
        pts = sorted({x for iv in intervals for x in (iv.lo, iv.hi)})
        index = {x: i for i, x in enumerate(pts)}
        # atom 2i is the point pts[i], atom 2i+1 is the gap (pts[i], pts[i+1])
        diff = [0] * (2 * len(pts) + 1)
        for iv in intervals:
            start = 2 * index[iv.lo] + (0 if iv.lo_closed else 1)
            stop = 2 * index[iv.hi] - (0 if iv.hi_closed else 1)
            diff[start] += 1
            diff[stop + 1] -= 1
        counts = list(itertools.accumulate(diff[:-2]))
        pieces = []
        a = 0
        while a < len(counts):
            c = counts[a]
            e = a
            while e + 1 < len(counts) and counts[e + 1] == c:
                e += 1
            if c:
                iv = Interval(pts[a // 2], pts[(e + 1) // 2], a % 2 == 0, e % 2 == 0)
                pieces.append((iv, c))
            a = e + 1
        return cls(domain, tuple(pieces))

    def __call__(self, level) -> int:
        return step_eval(self, level)

    def jump_points(self) -> list[Fraction]:
        return sorted({x for iv, _ in self.pieces for x in (iv.lo, iv.hi)})

    def reflected(self, total) -> "StepFunction":
        """``l -> f(total - l)``."""
        total = Fraction(total)
        pieces = tuple((iv.reflected(total), c) for iv, c in reversed(self.pieces))
        return StepFunction(self.domain.reflected(total), pieces)

    def to_dict(self) -> dict:
        return {
            "domain": self.domain.to_dict(),
            "pieces": [dict(iv.to_dict(), count=c) for iv, c in self.pieces],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "StepFunction":
        pieces = tuple((Interval.from_dict(p), int(p["count"])) for p in data["pieces"])
        return cls(Interval.from_dict(data["domain"]), pieces)


def step_eval(f: StepFunction, level) -> int:
    level = Fraction(level)
    if level not in f.domain:
        return 0
    i = bisect.bisect_right(f._starts, level) - 1
    # the last piece starting at or before `level` may be open there
    for iv, c in f.pieces[max(i - 1, 0): i + 1]:
        if level in iv:
            return c
    return 0


def denominator(vertices: Sequence[Sequence[Fraction]]) -> Fraction:
    """Smallest positive rational ``d`` with ``d * v`` integral for every vertex.

    lcm of coordinate denominators over gcd of nonzero numerators.  The
    all-zero configuration has no minimum; it gets ``d = 1``.
    """
    if not vertices:
        raise ValueError("denominator of an empty vertex list")
    coords = [Fraction(x) for v in vertices for x in v]
    lcm = exact.lcm_of_denominators(coords)
    nums = [abs(x.numerator) for x in coords if x != 0]
    if not nums:
        return Fraction(1)
    return Fraction(lcm, math.gcd(*nums))


@dataclass(frozen=True)
class RationalSimplex:
    vertices: tuple[Vector, ...]
    dim: int = field(init=False)
    ambient_dim: int = field(init=False)
    denominator: Fraction = field(init=False)

    def __post_init__(self):
        verts = tuple(exact.vector(v) for v in self.vertices)
        if not verts:
            raise ValueError("a simplex needs at least one vertex")
        if len({len(v) for v in verts}) != 1:
            raise ValueError("vertices live in different dimensions")
        n = len(verts) - 1
        edges = [tuple(x - y for x, y in zip(v, verts[0])) for v in verts[1:]]
        if n and exact.rank(edges) != n:
            raise ValueError("vertices are not affinely independent")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "ambient_dim", len(verts[0]))
        object.__setattr__(self, "denominator", denominator(verts))

    @property
    def vertex_matrix(self) -> exact.Matrix:
        """N x (n+1) matrix whose columns are the vertices."""
        return exact.transpose(self.vertices)

    @property
    def linearly_independent(self) -> bool:
        return exact.rank(self.vertices) == self.dim + 1

    def level_domain(self, kind: Kind) -> Interval:
        top = (self.dim + 1) * self.denominator
        if Kind.parse(kind) is Kind.CLOSED:
            return Interval(0, top, True, False)
        return Interval(0, top, False, True)

    def __str__(self) -> str:
        return "conv(" + ", ".join("(" + ",".join(map(str, v)) + ")" for v in self.vertices) + ")"


def _candidate_box(simplex: RationalSimplex, rows: Sequence[int], open_box: bool) -> list[tuple[int, int]]:
    """Integer range per coordinate row containing ``A u`` for ``u`` in the cube."""
    d = simplex.denominator
    box = []
    for i in rows:
        coords = [v[i] for v in simplex.vertices]
        lo = sum((min(Fraction(0), a) for a in coords), Fraction(0)) * d
        hi = sum((max(Fraction(0), a) for a in coords), Fraction(0)) * d
        box.append((math.ceil(lo), math.floor(hi)))
    return box


def _box_size(box) -> int:
    return math.prod(max(hi - lo + 1, 0) for lo, hi in box)


def _int_array(values, bound: int):
    dtype = np.int64 if bound < 2**62 else object
    return np.array(values, dtype=dtype)


def _closed_level_intervals(simplex: RationalSimplex, budget: int) -> list[Interval]:
    """Left-inverse enumeration: the level interval of every lattice point of the half-open parallelepiped."""
    A = simplex.vertex_matrix
    n, N = simplex.dim, simplex.ambient_dim
    d = simplex.denominator
    dn, dd = d.numerator, d.denominator
    r = exact.rank(A)

    # b in Col A is determined by its coordinates on a row basis of A
    _, pivot_rows = exact.rref(exact.transpose(A)) if r else ((), [])
    others = [i for i in range(N) if i not in pivot_rows]
    A_R = [A[i] for i in pivot_rows]
    if r:
        C = [exact.solve_consistent(exact.transpose(A_R), A[o]) for o in others]
    else:
        C = [() for _ in others]
    box = _candidate_box(simplex, pivot_rows, open_box=False)
    size = _box_size(box)
    if size > budget:
        raise BudgetExceeded(size, budget)
    if size == 0:
        return []
    bmax = max([1] + [abs(x) for lohi in box for x in lohi])

    C_int, Dc = exact.integer_scaled(C) if (C and r) else ([[0] * r for _ in others], 1)
    if r == n + 1:
        U, Du = exact.integer_scaled(exact.inverse(A_R))
        weight = max([1] + [abs(x) for row in U for x in row]) * bmax * (n + 2) * max(dn, dd, Du)
    else:
        B = [list(row) for row in A] + [[Fraction(1)] * (n + 1)]
        L, D = exact.integer_scaled(exact.left_inverse(B))
        q = [row[N] for row in L]
        qlcm = math.lcm(*(abs(x) for x in q if x))
        S = dd * qlcm
        weight = max([1] + [abs(x) for row in L for x in row]) * bmax * (N + 2) * max(dn, dd, D) * S * 4
    weight *= max([1] + [abs(x) for row in C_int for x in row]) * (r + 1) + Dc
    dims = [hi - lo + 1 for lo, hi in box]
    lows = np.array([lo for lo, _ in box], dtype=np.int64).reshape(-1, 1)

    C_arr = _int_array(C_int, weight).reshape(len(others), r)
    out: list[Interval] = []
    for start in range(0, size, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, size))
        if r:
            b_R = np.array(np.unravel_index(idx, dims), dtype=np.int64) + lows
        else:
            b_R = np.zeros((0, len(idx)), dtype=np.int64)
        b_R = b_R.astype(C_arr.dtype)
        b_other_scaled = C_arr @ b_R if others else np.zeros((0, len(idx)), dtype=C_arr.dtype)
        ok = np.all(b_other_scaled % Dc == 0, axis=0) if others else np.ones(len(idx), dtype=bool)
        b_R, b_other = b_R[:, ok], b_other_scaled[:, ok] // Dc
        if b_R.shape[1] == 0:
            continue
        if r == n + 1:
            u = _int_array(U, weight) @ b_R
            inside = np.all(u >= 0, axis=0) & np.all(u * dd < dn * Du, axis=0)
            for s in u[:, inside].sum(axis=0):
                out.append(Interval.point(Fraction(int(s), Du)))
            continue
        b = np.empty((N, b_R.shape[1]), dtype=b_R.dtype)
        b[pivot_rows, :] = b_R
        if others:
            b[others, :] = b_other
        Lb = _int_array([row[:N] for row in L], weight)
        P = Lb @ b
        lowers, lower_open, uppers, upper_open = [], [], [], []
        feasible = np.ones(P.shape[1], dtype=bool)
        for i, qi in enumerate(q):
            Pi = P[i]
            if qi > 0:
                lowers.append(-Pi * (S // qi))
                lower_open.append(False)
                uppers.append((dn * D - dd * Pi) * (S // (dd * qi)))
                upper_open.append(True)
            elif qi < 0:
                g = -qi
                uppers.append(Pi * (S // g))
                upper_open.append(False)
                lowers.append((dd * Pi - dn * D) * (S // (dd * g)))
                lower_open.append(True)
            else:
                feasible &= (Pi >= 0) & (dd * Pi < dn * D)
        lo_v, hi_v = np.vstack(lowers), np.vstack(uppers)
        lo = lo_v.max(axis=0)
        hi = hi_v.min(axis=0)
        lo_open = np.any((lo_v == lo) & np.array(lower_open).reshape(-1, 1), axis=0)
        hi_open = np.any((hi_v == hi) & np.array(upper_open).reshape(-1, 1), axis=0)
        feasible &= (lo < hi) | ((lo == hi) & ~lo_open & ~hi_open)
        for a, z, ao, zo in zip(lo[feasible], hi[feasible], lo_open[feasible], hi_open[feasible]):
            out.append(Interval(Fraction(int(a), S), Fraction(int(z), S), not ao, not zo))
    return out


def determined_sets(simplex: RationalSimplex, kind: Kind | str = Kind.CLOSED,
                    budget: int = DEFAULT_BUDGET) -> StepFunction:
    """Step function ``l -> #D(simplex, l)`` (closed) or ``#D̄(simplex, l)`` (open).

    The open function is the closed one reflected through ``l -> (n+1)d - l``.
    """
    kind = Kind.parse(kind)
    closed = _closed_step(simplex, budget)
    if kind is Kind.CLOSED:
        return closed
    return closed.reflected((simplex.dim + 1) * simplex.denominator)


@functools.lru_cache(maxsize=4096)
def _closed_step(simplex: RationalSimplex, budget: int) -> StepFunction:
    return StepFunction.from_intervals(simplex.level_domain(Kind.CLOSED), _closed_level_intervals(simplex, budget))


def _linear_interval(p: Fraction, q: Fraction, lo: Fraction, hi: Fraction,
                     lo_closed: bool, hi_closed: bool):
    """Set of ``l`` with ``p + q l`` inside the given interval, as (lo, hi, flags) or None.

    Unbounded sides are returned as None.
    """
    if q == 0:
        ok = (lo < p or (lo_closed and p == lo)) and (p < hi or (hi_closed and p == hi))
        return (None, None, True, True) if ok else False
    a, b = (lo - p) / q, (hi - p) / q
    if q > 0:
        return (a, b, lo_closed, hi_closed)
    return (b, a, hi_closed, lo_closed)


def _intersect(constraints) -> Interval | None:
    lo = hi = None
    lo_c = hi_c = True
    for c in constraints:
        if c is False:
            return None
        a, b, ac, bc = c
        if a is not None:
            if lo is None or a > lo:
                lo, lo_c = a, ac
            elif a == lo:
                lo_c = lo_c and ac
        if b is not None:
            if hi is None or b < hi:
                hi, hi_c = b, bc
            elif b == hi:
                hi_c = hi_c and bc
    if lo is None or hi is None:
        raise ValueError("unbounded level interval")
    if lo < hi or (lo == hi and lo_c and hi_c):
        return Interval(lo, hi, lo_c, hi_c)
    return None


def determined_sets_direct_open(simplex: RationalSimplex, budget: int = DEFAULT_BUDGET) -> StepFunction:
    """``l -> #D̄(simplex, l)`` straight from the definition ``0 < v_j <= d``.

    Scalar exact arithmetic over the full signed box; a cross-check for the
    reflected enumeration output, not used by the main path.
    """
    A = simplex.vertex_matrix
    n, N = simplex.dim, simplex.ambient_dim
    d = simplex.denominator
    box = _candidate_box(simplex, range(N), open_box=True)
    size = _box_size(box)
    if size > budget:
        raise BudgetExceeded(size, budget)
    r = exact.rank(A)
    if r == n:
        B = [list(row) for row in A] + [[Fraction(1)] * (n + 1)]
        L = exact.left_inverse(B)
    intervals = []
    for b in itertools.product(*(range(lo, hi + 1) for lo, hi in box)):
        b = tuple(Fraction(x) for x in b)
        u = exact.solve_consistent(A, b)
        if u is None:
            continue
        if r == n + 1:
            if all(0 < x <= d for x in u):
                intervals.append(Interval.point(sum(u)))
            continue
        cons = []
        for row in L:
            p = sum((x * y for x, y in zip(row[:N], b)), Fraction(0))
            cons.append(_linear_interval(p, row[N], Fraction(0), d, False, True))
        iv = _intersect(cons)
        if iv is not None:
            intervals.append(iv)
    return StepFunction.from_intervals(simplex.level_domain(Kind.OPEN), intervals)
