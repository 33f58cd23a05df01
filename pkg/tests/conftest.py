from pathlib import Path

import pytest

from toricimplicit.pipeline import JobSpec, prepare
from toricimplicit.polytope import LatticePolytope

JOBS = Path(__file__).resolve().parent.parent / "jobs"

# bidegree-(2,6) style surface used throughout the suite
EXAMPLE_F = ["s*t^6+2", "s*t^5-3*s*t^3", "s*t^4+5*s^2*t^6", "2+s^2*t^6"]
SMALL_Q = LatticePolytope.from_points([(0, 0), (0, 3), (1, 3)])
PLANE_F = ["s", "t", "1", "s+t"]


@pytest.fixture(scope="session")
def example():
    """Q = N(f), d = 1."""
    return prepare(JobSpec(f=EXAMPLE_F))


@pytest.fixture(scope="session")
def example_small_q():
    return prepare(JobSpec(f=EXAMPLE_F, polytope=SMALL_Q, d=2))


@pytest.fixture(scope="session")
def plane():
    return prepare(JobSpec(f=PLANE_F))


@pytest.fixture(scope="session")
def example_implicit(example):
    return example.implicit()


@pytest.fixture(scope="session")
def small_q_implicit(example_small_q):
    return example_small_q.implicit()
