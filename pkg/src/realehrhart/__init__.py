"""Exact real Ehrhart quasi-polynomials of rational polytopes."""
from .exact import Rational, format_rational, parse_rational
from .oracle import CountQuery, barycentric, brute_count, random_polytope
from .polytope import Decomposition, OpenCell, RationalPolytope, polytope_quasi, triangulate, volume
from .quasipoly import (PeriodicPiecewisePolynomial, Polynomial, QuasiPolynomial, eval_binomial_formula,
                        eval_quasi, simplex_coefficients)
from .report import CheckReport
from .simplex import BudgetExceeded, Interval, Kind, RationalSimplex, StepFunction, determined_sets, step_eval

__all__ = [
    "BudgetExceeded", "CheckReport", "CountQuery", "Decomposition", "Interval", "Kind", "OpenCell",
    "PeriodicPiecewisePolynomial", "Polynomial", "QuasiPolynomial", "Rational", "RationalPolytope",
    "RationalSimplex", "StepFunction", "barycentric", "brute_count", "determined_sets", "eval_binomial_formula",
    "eval_quasi", "format_rational", "parse_rational", "polytope_quasi", "random_polytope",
    "simplex_coefficients", "step_eval", "triangulate", "volume",
]
