"""Shared fixtures and helpers for the test suite."""
import numpy as np
import pytest

from popinn.demography import InitialProfile, Quadrature, birth_integral, scenario_by_name


def smooth_consistent_profile(scenario_name="separate-two-child", quad_nodes=31):
    """A smooth initial profile whose age-0 value equals its own birth
    integral, so the exact solution is continuous at the domain corner.

    Density 1.15*exp(-a/40) + 0.6 sampled on 101 knots, with the age-0
    knot replaced by the profile's birth integral (fertility is zero below
    age 20, so one substitution suffices).
    """
    scenario = scenario_by_name(scenario_name)
    quad = Quadrature(nodes=quad_nodes)
    ages = np.linspace(0.0, 100.0, 101)
    dens = 1.15 * np.exp(-ages / 40.0) + 0.6
    p0 = InitialProfile(tuple(zip(ages, dens)))
    dens[0] = birth_integral(p0, 2024.0, scenario, quad)
    return InitialProfile(tuple(zip(ages, dens)))


@pytest.fixture(scope="session")
def desk_profile():
    return smooth_consistent_profile()
