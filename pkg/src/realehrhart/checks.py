"""Verification suites: every identity is checked exactly and reported as a CheckReport."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import exact
from .oracle import brute_count, random_polytope, sample_grid
from .polytope import Decomposition, RationalPolytope, polytope_binomial_eval, polytope_quasi, triangulate, volume
from .quasipoly import QuasiPolynomial, derivative_check, leading_coefficient_check, simplex_coefficients
from .report import CheckReport
from .simplex import DEFAULT_BUDGET, Kind, RationalSimplex, determined_sets

SUITES = ("oracle", "reciprocity", "derivative", "period", "volume", "binomial", "order")


@dataclass
class VerifyConfig:
    suites: tuple[str, ...] = SUITES
    t_samples: int = 10
    negative_samples: int = 20
    period_samples: int = 20
    seed: int = 0
    budget: int = DEFAULT_BUDGET


@dataclass
class Case:
    """A polytope with both quasi-polynomials and its triangulation, computed once."""

    polytope: RationalPolytope
    decomposition: Decomposition
    closed: QuasiPolynomial
    open: QuasiPolynomial

    @classmethod
    def build(cls, P: RationalPolytope, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> "Case":
        dec = triangulate(P)
        return cls(P, dec, polytope_quasi(P, Kind.CLOSED, budget, jobs, dec),
                   polytope_quasi(P, Kind.OPEN, budget, jobs, dec))

    @property
    def label(self) -> str:
        return self.polytope.name or str([[str(x) for x in v] for v in self.polytope.vertices])

    def samples(self, count: int, rng: random.Random) -> list[Fraction]:
        """Breakpoints, midpoints and integers in ``(0, 3d]``."""
        bps = set(self.closed.breakpoints()) | set(self.open.breakpoints())
        return sample_grid(sorted(bps), self.closed.period, 3 * self.polytope.denominator, count, rng)


def oracle_check(case: Case, ts: Iterable[Fraction], budget: int = DEFAULT_BUDGET) -> CheckReport:
    report = CheckReport("oracle")
    for t in ts:
        for kind, q in ((Kind.CLOSED, case.closed), (Kind.OPEN, case.open)):
            got, want = q(t), brute_count(case.decomposition, t, kind, budget)
            report.record(got == want, polytope=case.label, kind=kind.value, t=t, quasi=got, brute=want)
    return report


def coefficient_reciprocity_check(closed: QuasiPolynomial, open_: QuasiPolynomial,
                                  ts: Iterable[Fraction] = (), label: str = "") -> CheckReport:
    """``c_k(closed, -t) = (-1)^(n-k) c_k(open, t)`` as functions and at the given points."""
    report = CheckReport("coefficient-reciprocity")
    n = closed.dim
    ts = list(ts)
    for k in range(n + 1):
        sign = (-1) ** (n - k)
        lhs, rhs = closed.coeffs[k].reflected(), open_.coeffs[k].scaled(sign)
        report.record(lhs.equivalent(rhs), simplex=label, k=k, check="as functions")
        for t in ts:
            a, b = closed.coeffs[k](-t), sign * open_.coeffs[k](t)
            report.record(a == b, simplex=label, k=k, t=t, closed_at_minus_t=a, signed_open=b)
    return report


def reciprocity_check(case: Case, ts: Iterable[Fraction], budget: int = DEFAULT_BUDGET) -> CheckReport:
    """Value reciprocity for the polytope, coefficient reciprocity for every maximal cell."""
    ts = list(ts)
    sign = (-1) ** case.polytope.dim
    report = CheckReport("reciprocity")
    for t in [Fraction(0)] + ts:
        lhs, rhs = case.open(-t), sign * case.closed(t)
        report.record(lhs == rhs, polytope=case.label, t=t, open_at_minus_t=lhs, signed_closed=rhs)
    simplices = [c.simplex for c in case.decomposition.maximal_cells]
    if case.polytope.is_simplex and len(simplices) > 1:
        simplices.append(case.polytope.as_simplex())
    for s in simplices:
        closed = simplex_coefficients(s, Kind.CLOSED, budget)
        open_ = simplex_coefficients(s, Kind.OPEN, budget)
        report.merge(coefficient_reciprocity_check(closed, open_, ts[:5], label=str(s.vertices)))
    return report


def derivative_suite(case: Case) -> CheckReport:
    report = CheckReport("derivative")
    for q in (case.closed, case.open):
        report.merge(derivative_check(q))
    return report


def period_check(case: Case, ts: Iterable[Fraction]) -> CheckReport:
    """``c_k(t + d) = c_k(t)`` for ``d`` the denominator of the polytope, not the stored period."""
    report = CheckReport("period")
    d = case.polytope.denominator
    for q in (case.closed, case.open):
        for t in ts:
            for k, c in enumerate(q.coeffs):
                a, b = c(t), c(t + d)
                report.record(a == b, polytope=case.label, kind=q.kind.value, k=k, t=t, d=d, at_t=a, at_t_plus_d=b)
    return report


def level_sum_check(simplex: RationalSimplex, ts: Iterable[Fraction], budget: int = DEFAULT_BUDGET) -> CheckReport:
    """Sum over ``i`` of the determined-set counts at ``d i + d {t/d}`` is ``n! d^n vol``; same for the open sets."""
    report = CheckReport("level-sum")
    n, d = simplex.dim, simplex.denominator
    if n != simplex.ambient_dim:
        raise ValueError("level sums need a full-dimensional simplex")
    v0 = simplex.vertices[0]
    vol = abs(exact.det([tuple(a - b for a, b in zip(v, v0)) for v in simplex.vertices[1:]])) / math.factorial(n)
    want = math.factorial(n) * d**n * vol
    closed = determined_sets(simplex, Kind.CLOSED, budget)
    open_ = determined_sets(simplex, Kind.OPEN, budget)
    for t in ts:
        frac = exact.floor_frac(t / d)[1]
        ang = exact.ceil_frac(t / d)[1]
        got_closed = sum(closed(d * i + d * frac) for i in range(n + 1))
        got_open = sum(open_(d * j + d * ang) for j in range(1, n + 2))
        report.record(got_closed == want, simplex=simplex.vertices, t=t, kind="closed", total=got_closed, expected=want)
        report.record(got_open == want, simplex=simplex.vertices, t=t, kind="open", total=got_open, expected=want)
    return report


def volume_check(case: Case, samples_per_period: int = 10, budget: int = DEFAULT_BUDGET) -> CheckReport:
    """Leading coefficients of the polytope and level sums of its maximal cells."""
    P = case.polytope
    report = CheckReport("volume")
    if P.dim != P.ambient_dim or P.dim == 0:
        report.notes.append(f"skipped {case.label}: not full-dimensional")
        return report
    vol = volume(P, case.decomposition)
    report.merge(leading_coefficient_check(case.closed, vol))
    report.merge(leading_coefficient_check(case.open, vol))
    for cell in case.decomposition.maximal_cells:
        s = cell.simplex
        ts = [s.denominator * Fraction(i, samples_per_period) for i in range(samples_per_period)]
        report.merge(level_sum_check(s, ts, budget))
    return report


def binomial_check(case: Case, ts: Iterable[Fraction], budget: int = DEFAULT_BUDGET) -> CheckReport:
    """Finite binomial sums over the cells against the assembled quasi-polynomial, any sign of ``t``."""
    report = CheckReport("binomial")
    for t in ts:
        for q in (case.closed, case.open):
            a, b = polytope_binomial_eval(case.decomposition, t, q.kind, budget), q(t)
            report.record(a == b, polytope=case.label, kind=q.kind.value, t=t, binomial=a, quasi=b)
    return report


def order_check(case: Case, budget: int = DEFAULT_BUDGET) -> CheckReport:
    """Two insertion orders give the same quasi-polynomials as functions."""
    report = CheckReport("order-independence")
    other = triangulate(case.polytope, order="reverse")
    for q in (case.closed, case.open):
        r = polytope_quasi(case.polytope, q.kind, budget, decomposition=other)
        report.record(q.equivalent(r), polytope=case.label, kind=q.kind.value)
    return report


def negative_samples(case: Case, count: int, rng: random.Random) -> list[Fraction]:
    """``count`` distinct negative rationals within three periods of zero."""
    d = case.polytope.denominator
    out: set[Fraction] = set()
    while len(out) < count:
        q = rng.randint(1, 12)
        out.add(-d * Fraction(rng.randint(1, 3 * q), q))
    return sorted(out)


def period_samples(case: Case, count: int, rng: random.Random) -> list[Fraction]:
    """Window breakpoints first, then random rationals of both signs."""
    out = sorted(case.closed.breakpoints())[: count // 2]
    while len(out) < count:
        out.append(Fraction(rng.randint(-60, 60), rng.randint(1, 12)))
    return out


@dataclass
class VerifyResult:
    reports: dict[str, CheckReport] = field(default_factory=dict)
    cases: int = 0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports.values())

    def add(self, report: CheckReport, suite: str) -> None:
        if suite in self.reports:
            self.reports[suite].merge(report)
        else:
            self.reports[suite] = CheckReport(suite).merge(report)

    def lines(self) -> list[str]:
        return [self.reports[s].summary() for s in SUITES if s in self.reports]


def verify_case(case: Case, config: VerifyConfig, rng: random.Random, result: VerifyResult) -> None:
    ts = case.samples(config.t_samples, rng)
    if "oracle" in config.suites:
        result.add(oracle_check(case, ts, config.budget), "oracle")
    if "reciprocity" in config.suites:
        result.add(reciprocity_check(case, ts, config.budget), "reciprocity")
    if "derivative" in config.suites:
        result.add(derivative_suite(case), "derivative")
    if "period" in config.suites:
        result.add(period_check(case, period_samples(case, config.period_samples, rng)), "period")
    if "volume" in config.suites:
        result.add(volume_check(case, budget=config.budget), "volume")
    if "binomial" in config.suites:
        result.add(binomial_check(case, negative_samples(case, config.negative_samples, rng), config.budget),
                   "binomial")
    if "order" in config.suites:
        result.add(order_check(case, config.budget), "order")
    result.cases += 1


def random_cases(seed: int, count: int, max_dim: int = 3, coord_bound: int = 3,
                 denom_bound: int = 4) -> list[RationalPolytope]:
    """Round-robin over ambient dimensions ``1..max_dim``, one seed per case."""
    out = []
    for i in range(count):
        N = 1 + i % max_dim
        out.append(random_polytope(seed * 100003 + i, N, N + 3, coord_bound, denom_bound))
    return out


def verify(polytopes: Sequence[RationalPolytope], config: VerifyConfig, jobs: int = 1) -> VerifyResult:
    rng = random.Random(config.seed)
    result = VerifyResult()
    for P in polytopes:
        verify_case(Case.build(P, config.budget, jobs), config, rng, result)
    return result
