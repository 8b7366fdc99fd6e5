import os
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from realehrhart import RationalPolytope, RationalSimplex

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=400,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = Path(__file__).resolve().parent.parent / "data"
TETRA = [(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)]


@pytest.fixture
def tetra() -> RationalSimplex:
    return RationalSimplex(TETRA)


@pytest.fixture
def tetra_polytope() -> RationalPolytope:
    return RationalPolytope(TETRA, name="tetrahedron")


@pytest.fixture
def square() -> RationalPolytope:
    return RationalPolytope([(0, 0), (1, 0), (0, 1), (1, 1)], name="unit-square")


@pytest.fixture
def cube() -> RationalPolytope:
    return RationalPolytope([(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)], name="unit-cube")


def F(x) -> Fraction:
    return Fraction(x)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
