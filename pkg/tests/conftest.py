"""Shared fixtures: the three reference potentials and hypothesis profile."""

from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from poisdef import TransferState, WeightSystem, milnor_basis, parse_poly

settings.register_profile(
    "exact",
    max_examples=25,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")


@pytest.fixture(scope="session")
def quadric():
    """x^2 + y^2 + z^2 with unit weights: generic, mu = 1."""
    return milnor_basis(parse_poly("x^2 + y^2 + z^2"), WeightSystem((1, 1, 1)))


@pytest.fixture(scope="session")
def cubic():
    """x^3 + y^3 + z^3 with unit weights: balanced (special), mu = 8."""
    return milnor_basis(parse_poly("x^3 + y^3 + z^3"), WeightSystem((1, 1, 1)))


@pytest.fixture(scope="session")
def brieskorn():
    """x^2 + y^3 + z^5 with weights (15, 10, 6): generic, mu = 8."""
    return milnor_basis(parse_poly("x^2 + y^3 + z^5"),
                        WeightSystem((15, 10, 6)))


@pytest.fixture(scope="session")
def quadric_state(quadric):
    return TransferState(data=quadric, arity_cap=4)


@pytest.fixture(scope="session")
def cubic_state(cubic):
    return TransferState(data=cubic, arity_cap=4)


@pytest.fixture(scope="session")
def brieskorn_state(brieskorn):
    return TransferState(data=brieskorn, arity_cap=4)
