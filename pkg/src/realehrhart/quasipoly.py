"""Periodic piecewise polynomials and real Ehrhart quasi-polynomials of simplices.

A coefficient function ``c_k`` is stored on one period window: ``[0, rho)``
for closed counts and ``(0, rho]`` for open counts.  Each piece carries the
polynomial, in the unreduced variable ``t`` restricted to the window, that the
coefficient formula produces with the determined-set counts of that piece.
Single-point pieces are allowed, so the representation is exact everywhere.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence

from . import exact
from .report import CheckReport
from .simplex import DEFAULT_BUDGET, Interval, Kind, RationalSimplex, StepFunction, determined_sets


@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial with exact coefficients in ascending degree."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((c,))

    @classmethod
    def linear(cls, a, b) -> "Polynomial":
        """``a + b t``."""
        return cls((a, b))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __call__(self, t) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        m = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(self.coefficient(i) + other.coefficient(i) for i in range(m)))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return Polynomial(tuple(c * other for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def compose_affine(self, a, b) -> "Polynomial":
        """``t -> p(a t + b)``."""
        inner = Polynomial.linear(b, a)
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def shift(self, delta) -> "Polynomial":
        """``t -> p(t - delta)``."""
        delta = Fraction(delta)
        return _shifted(self, delta) if delta else self

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        out = ""
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            power = "" if i == 0 else "t" if i == 1 else f"t^{i}"
            mag = abs(c)
            body = str(mag) if not power else power if mag == 1 else f"{mag}*{power}"
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def to_list(self) -> list[str]:
        return [exact.format_rational(c) for c in self.coeffs]

    @classmethod
    def from_list(cls, data: Sequence) -> "Polynomial":
        return cls(tuple(exact.parse_rational(c) for c in data))


@lru_cache(maxsize=1 << 16)
def _shifted(poly: Polynomial, delta: Fraction) -> Polynomial:
    return poly.compose_affine(1, -delta)


def linear_combination(polys: Iterable[Polynomial], weights: Iterable) -> Polynomial:
    """``sum w_i p_i`` accumulated coefficientwise."""
    acc: list[Fraction] = []
    for p, w in zip(polys, weights):
        if not w:
            continue
        if len(p.coeffs) > len(acc):
            acc.extend([Fraction(0)] * (len(p.coeffs) - len(acc)))
        for i, c in enumerate(p.coeffs):
            acc[i] += c * w
    return Polynomial(tuple(acc))


def _window(period: Fraction, kind: Kind) -> Interval:
    if kind is Kind.CLOSED:
        return Interval(0, period, True, False)
    return Interval(0, period, False, True)


def reduce_to_window(t, period: Fraction, kind: Kind) -> tuple[Fraction, int]:
    """Return ``(t - m*period, m)`` with the first entry inside the window."""
    t = Fraction(t)
    q = t / period
    m = math.floor(q) if kind is Kind.CLOSED else math.ceil(q) - 1
    return t - m * period, m


def _atoms(breakpoints: Iterable[Fraction], period: Fraction, kind: Kind) -> list[Interval]:
    """Alternating point / open-gap partition of the window at the given breakpoints."""
    pts = sorted({Fraction(0), Fraction(period)} | {b for b in breakpoints if 0 <= b <= period})
    atoms = []
    for i, p in enumerate(pts):
        if (p == 0 and kind is Kind.OPEN) or (p == period and kind is Kind.CLOSED):
            pass
        else:
            atoms.append(Interval.point(p))
        if i + 1 < len(pts):
            atoms.append(Interval(p, pts[i + 1], False, False))
    return atoms


def _representative(atom: Interval) -> Fraction:
    return atom.lo if atom.is_point else atom.midpoint()


def _merge(atoms: Sequence[Interval], polys: Sequence[Polynomial]) -> tuple[tuple[Interval, Polynomial], ...]:
    """Glue neighbouring atoms that carry identical polynomials."""
    pieces: list[tuple[Interval, Polynomial]] = []
    for atom, poly in zip(atoms, polys):
        if pieces and pieces[-1][1] == poly:
            prev, _ = pieces[-1]
            pieces[-1] = (Interval(prev.lo, atom.hi, prev.lo_closed, atom.hi_closed), poly)
        else:
            pieces.append((atom, poly))
    return tuple(pieces)


@dataclass(frozen=True)
class PeriodicPiecewisePolynomial:
    period: Fraction
    kind: Kind
    pieces: tuple[tuple[Interval, Polynomial], ...]
    _ends: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "period", Fraction(self.period))
        if self.period <= 0:
            raise ValueError("period must be positive")
        _check_partition(self.window, [iv for iv, _ in self.pieces])
        object.__setattr__(self, "_ends", tuple(iv.hi for iv, _ in self.pieces))

    @property
    def window(self) -> Interval:
        return _window(self.period, self.kind)

    @classmethod
    def from_atoms(cls, period, kind: Kind, atoms, polys) -> "PeriodicPiecewisePolynomial":
        return cls(Fraction(period), kind, _merge(atoms, polys))

    @classmethod
    def constant(cls, value, period=1, kind: Kind = Kind.CLOSED) -> "PeriodicPiecewisePolynomial":
        return cls(Fraction(period), kind, ((_window(Fraction(period), kind), Polynomial.constant(value)),))

    def breakpoints(self) -> list[Fraction]:
        return sorted({x for iv, _ in self.pieces for x in (iv.lo, iv.hi)})

    def piece_at(self, t) -> tuple[Interval, Polynomial, int]:
        """Piece containing ``t`` after reduction, plus the number of periods removed."""
        tw, m = reduce_to_window(t, self.period, self.kind)
        i = bisect.bisect_left(self._ends, tw)
        if tw not in self.pieces[i][0]:
            i += 1
        iv, poly = self.pieces[i]
        return iv, poly, m

    def __call__(self, t) -> Fraction:
        tw, _ = reduce_to_window(t, self.period, self.kind)
        _, poly, _ = self.piece_at(tw)
        return poly(tw)

    def poly_near(self, t) -> Polynomial:
        """Polynomial in ``t`` valid on the piece containing ``t`` (translated copy)."""
        _, poly, m = self.piece_at(t)
        return poly.shift(m * self.period)

    def _sweep(self, points: Sequence[Fraction], span: Fraction) -> list[Polynomial]:
        """``poly_near`` at each of the sorted ``points`` in ``[0, span]``, by one linear pass."""
        tiles = [(iv.hi + m * self.period, iv.hi_closed, poly, m)
                 for m in range(-1, int(span / self.period) + 2) for iv, poly in self.pieces]
        out, j = [], 0
        for x in points:
            while x > tiles[j][0] or (x == tiles[j][0] and not tiles[j][1]):
                j += 1
            _, _, poly, m = tiles[j]
            out.append(poly.shift(m * self.period))
        return out

    def tiled_breakpoints(self, period: Fraction) -> set[Fraction]:
        """Breakpoints of the periodic extension inside ``[0, period]``."""
        out = set()
        copies = int(period / self.period)
        for b in self.breakpoints():
            for m in range(-1, copies + 2):
                x = b + m * self.period
                if 0 <= x <= period:
                    out.add(x)
        return out

    def resampled(self, period=None, kind: Kind | None = None) -> "PeriodicPiecewisePolynomial":
        """Same function on another window; ``period`` must be a multiple of ``self.period``."""
        return combine([self], period=period, kind=kind)

    def reflected(self) -> "PeriodicPiecewisePolynomial":
        """``t -> f(-t)``; a closed window becomes an open one and vice versa."""
        rho = self.period
        pieces = tuple((iv.reflected(rho), poly.compose_affine(-1, rho)) for iv, poly in reversed(self.pieces))
        other = Kind.OPEN if self.kind is Kind.CLOSED else Kind.CLOSED
        return PeriodicPiecewisePolynomial(rho, other, pieces)

    def scaled(self, c) -> "PeriodicPiecewisePolynomial":
        return PeriodicPiecewisePolynomial.from_atoms(
            self.period, self.kind, [iv for iv, _ in self.pieces], [p * Fraction(c) for _, p in self.pieces])

    def derivative(self) -> "PeriodicPiecewisePolynomial":
        """Piecewise derivative; at a point piece it is the derivative of that piece's polynomial."""
        return PeriodicPiecewisePolynomial.from_atoms(
            self.period, self.kind, [iv for iv, _ in self.pieces], [p.derivative() for _, p in self.pieces])

    def __add__(self, other: "PeriodicPiecewisePolynomial") -> "PeriodicPiecewisePolynomial":
        return combine([self, other], kind=self.kind)

    def equivalent(self, other: "PeriodicPiecewisePolynomial") -> bool:
        """Equality as functions on the reals."""
        for atom, (p, q) in align([self, other]):
            if atom.is_point:
                if p(atom.lo) != q(atom.lo):
                    return False
            elif p != q:
                return False
        return True

    def to_dict(self) -> dict:
        return {"pieces": [{"interval": iv.to_dict(), "poly": p.to_list()} for iv, p in self.pieces]}

    @classmethod
    def from_dict(cls, data: dict, period, kind: Kind) -> "PeriodicPiecewisePolynomial":
        pieces = tuple((Interval.from_dict(p["interval"]), Polynomial.from_list(p["poly"])) for p in data["pieces"])
        return cls(Fraction(period), kind, pieces)


def _check_partition(window: Interval, intervals: Sequence[Interval]) -> None:
    if not intervals:
        raise ValueError("no pieces")
    first, last = intervals[0], intervals[-1]
    ok = (first.lo, first.lo_closed, last.hi, last.hi_closed) == (window.lo, window.lo_closed, window.hi, window.hi_closed)
    for a, b in zip(intervals, intervals[1:]):
        ok = ok and a.hi == b.lo and (a.hi_closed != b.lo_closed)
    if not ok:
        raise ValueError("pieces do not partition the window " + str(window))


def align(functions: Sequence[PeriodicPiecewisePolynomial], period=None, kind: Kind | None = None):
    """Common refinement: yields ``(atom, [poly of each function on the atom])``.

    The default period is the rational lcm of the inputs and the default window
    that of the first function.
    """
    if period is None:
        period = reduce(exact.rational_lcm, (f.period for f in functions))
    period = Fraction(period)
    kind = kind or functions[0].kind
    bps: set[Fraction] = set()
    for f in functions:
        if (period / f.period).denominator != 1:
            raise ValueError(f"period {period} is not a multiple of {f.period}")
        bps |= f.tiled_breakpoints(period)
    atoms = _atoms(bps, period, kind)
    reps = [_representative(a) for a in atoms]
    columns = [f._sweep(reps, period) for f in functions]
    for i, atom in enumerate(atoms):
        yield atom, [col[i] for col in columns]


def combine(functions: Sequence[PeriodicPiecewisePolynomial], weights: Sequence | None = None,
            period=None, kind: Kind | None = None) -> PeriodicPiecewisePolynomial:
    """Weighted pointwise sum on a common window."""
    if period is None:
        period = reduce(exact.rational_lcm, (f.period for f in functions))
    kind = kind or functions[0].kind
    weights = [Fraction(1)] * len(functions) if weights is None else [Fraction(w) for w in weights]
    groups: dict[Fraction, list[int]] = {}
    for i, f in enumerate(functions):
        groups.setdefault(f.period, []).append(i)
    if len(groups) > 1 and len(groups) < len(functions):
        # summing same-period terms first keeps the refinement small
        functions = [combine([functions[i] for i in idx], [weights[i] for i in idx], rho, kind)
                     for rho, idx in groups.items()]
        weights = [Fraction(1)] * len(functions)
    atoms, polys = [], []
    for atom, ps in align(functions, period, kind):
        atoms.append(atom)
        polys.append(linear_combination(ps, weights))
    return PeriodicPiecewisePolynomial.from_atoms(period, kind, atoms, polys)


@dataclass(frozen=True)
class QuasiPolynomial:
    """``L(t) = sum_k c_k(t) t^k`` with periodic piecewise polynomial ``c_k``."""

    dim: int
    kind: Kind
    coeffs: tuple[PeriodicPiecewisePolynomial, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.dim + 1:
            raise ValueError("need one coefficient function per power 0..dim")
        if len({(c.period, c.kind) for c in self.coeffs}) != 1 or self.coeffs[0].kind is not self.kind:
            raise ValueError("coefficient functions must share period and window")

    @property
    def period(self) -> Fraction:
        return self.coeffs[0].period

    def __call__(self, t) -> Fraction:
        return eval_quasi(self, t)

    def breakpoints(self) -> list[Fraction]:
        return sorted({b for c in self.coeffs for b in c.breakpoints()})

    def equivalent(self, other: "QuasiPolynomial") -> bool:
        if self.dim != other.dim:
            return False
        return all(a.equivalent(b) for a, b in zip(self.coeffs, other.coeffs))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "dim": self.dim,
            "period": exact.format_rational(self.period),
            "coefficients": [dict(k=k, **c.to_dict()) for k, c in enumerate(self.coeffs)],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "QuasiPolynomial":
        kind = Kind.parse(data["kind"])
        period = exact.parse_rational(data["period"])
        by_k = sorted(data["coefficients"], key=lambda c: int(c["k"]))
        if [int(c["k"]) for c in by_k] != list(range(int(data["dim"]) + 1)):
            raise ValueError("coefficient indices must be 0..dim")
        coeffs = tuple(PeriodicPiecewisePolynomial.from_dict(c, period, kind) for c in by_k)
        return cls(int(data["dim"]), kind, coeffs)


def elementary_symmetric(j: int, values: Sequence) -> Fraction:
    """``s_j(values)``: sum of all products of ``j`` distinct entries."""
    n = len(values)
    if not 0 <= j <= n:
        raise ValueError(f"elementary symmetric s_{j} of {n} variables")
    e = [Fraction(1)] + [Fraction(0)] * j
    for v in values:
        for m in range(j, 0, -1):
            e[m] += v * e[m - 1]
    return e[j]


def symmetric_poly_in_t(j: int, offsets: Sequence, slope) -> Polynomial:
    """``s_j(o_1 + slope t, ..., o_n + slope t)`` expanded in ``t``."""
    n = len(offsets)
    if not 0 <= j <= n:
        raise ValueError(f"elementary symmetric s_{j} of {n} variables")
    e = [Polynomial.constant(1)] + [Polynomial()] * j
    for o in offsets:
        arg = Polynomial.linear(o, slope)
        for m in range(j, 0, -1):
            e[m] = e[m] + arg * e[m - 1]
    return e[j]


def generalized_binomial(a, n: int) -> Fraction:
    """``binom(a + n, n) = (a+1)(a+2)...(a+n) / n!`` for any rational ``a``."""
    out = Fraction(1)
    for i in range(1, n + 1):
        out *= Fraction(a) + i
    return out / math.factorial(n)


def _level_offsets(simplex: RationalSimplex, kind: Kind) -> list[tuple[Fraction, list[int]]]:
    """Per summand: level offset added to the window variable, and symmetric-poly offsets."""
    n, d = simplex.dim, simplex.denominator
    if kind is Kind.CLOSED:
        return [(d * j, [l - j for l in range(1, n + 1)]) for j in range(n + 1)]
    return [(d * (j - 1), [l - j + 1 for l in range(1, n + 1)]) for j in range(1, n + 2)]


def simplex_coefficients(simplex: RationalSimplex, kind: Kind | str = Kind.CLOSED,
                         budget: int = DEFAULT_BUDGET,
                         step: StepFunction | None = None) -> QuasiPolynomial:
    """Coefficient functions ``c_k(simplex, t)`` or ``c_k(open simplex, t)``, k = 0..n."""
    kind = Kind.parse(kind)
    if step is None:
        return _cached_coefficients(simplex, kind, budget)
    return _coefficients_from_step(simplex, kind, step)


@lru_cache(maxsize=4096)
def _cached_coefficients(simplex: RationalSimplex, kind: Kind, budget: int) -> QuasiPolynomial:
    return _coefficients_from_step(simplex, kind, determined_sets(simplex, kind, budget))


def _coefficients_from_step(simplex: RationalSimplex, kind: Kind, f: StepFunction) -> QuasiPolynomial:
    n, d = simplex.dim, simplex.denominator
    summands = _level_offsets(simplex, kind)
    bps = {x - off for off, _ in summands for x in f.jump_points()}
    atoms = _atoms(bps, d, kind)
    counts = [tuple(f(off + _representative(a)) for off, _ in summands) for a in atoms]
    coeffs = []
    slope = Fraction(-1) / d
    for k in range(n + 1):
        scale = Fraction(1, math.factorial(n)) / d**k
        basis = [symmetric_poly_in_t(n - k, offs, slope) * scale for _, offs in summands]
        by_counts = {cs: linear_combination(basis, cs) for cs in set(counts)}
        polys = [by_counts[cs] for cs in counts]
        coeffs.append(PeriodicPiecewisePolynomial.from_atoms(d, kind, atoms, polys))
    return QuasiPolynomial(n, kind, tuple(coeffs))


def eval_quasi(q: QuasiPolynomial, t) -> Fraction:
    """``sum_k c_k(t) t^k``; coefficients are reduced into their window, ``t^k`` is not."""
    t = Fraction(t)
    return sum((c(t) * t**k for k, c in enumerate(q.coeffs)), Fraction(0))


def eval_binomial_formula(simplex: RationalSimplex, t, kind: Kind | str = Kind.CLOSED,
                          step: StepFunction | None = None, budget: int = DEFAULT_BUDGET) -> Fraction:
    """Evaluate the finite binomial-basis sum for ``L(simplex, t)`` or its open variant."""
    kind = Kind.parse(kind)
    t = Fraction(t)
    n, d = simplex.dim, simplex.denominator
    f = step if step is not None else determined_sets(simplex, kind, budget)
    if kind is Kind.CLOSED:
        top = math.floor(t / d)
        terms = range(top - n, top + 1)
    else:
        top = math.ceil(t / d)
        terms = range(top - n - 1, top)
    return sum((f(t - d * a) * generalized_binomial(a, n) for a in terms), Fraction(0))


def derivative_piecewise(q: QuasiPolynomial, k: int) -> PeriodicPiecewisePolynomial:
    """Piecewise derivative of ``c_k``.

    Point pieces carry the derivative of their own polynomial; only the open
    pieces have a derivative in the analytic sense.
    """
    if not 0 <= k < q.dim:
        raise ValueError(f"derivative_piecewise needs 0 <= k < {q.dim}, got {k}")
    return q.coeffs[k].derivative()


def derivative_check(q: QuasiPolynomial) -> CheckReport:
    """``c_k' = -(k+1) c_{k+1}`` as polynomial identities on every open piece."""
    report = CheckReport("derivative")
    for k in range(q.dim):
        lhs = derivative_piecewise(q, k)
        rhs = q.coeffs[k + 1]
        for atom, (p, r) in align([lhs, rhs]):
            if atom.is_point:
                continue
            report.record(p == r * (-(k + 1)), k=k, piece=atom, derivative=p, expected=r * (-(k + 1)))
    return report


def leading_coefficient_check(q: QuasiPolynomial, vol) -> CheckReport:
    """Every piece of ``c_k`` has degree ``n-k`` and leading coefficient ``(-1)^(n-k) C(n,k) vol``."""
    report = CheckReport("leading-coefficient")
    n = q.dim
    vol = Fraction(vol)
    for k, c in enumerate(q.coeffs):
        want = (-1) ** (n - k) * math.comb(n, k) * vol
        for iv, p in c.pieces:
            report.record(p.degree == n - k and p.leading == want, k=k, piece=iv, poly=p, expected_leading=want)
    return report
