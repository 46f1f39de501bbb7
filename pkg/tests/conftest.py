import pytest
from hypothesis import HealthCheck, settings

from lefschetz_lab import GradedIdeal, parse_polynomial

settings.register_profile("repo", deadline=None, derandomize=True, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


def poly(text, nvars=None):
    return parse_polynomial(text, nvars=nvars)


def ideal(nvars, *gens):
    return GradedIdeal(nvars, [parse_polynomial(g, nvars=nvars) for g in gens])


@pytest.fixture
def tog():
    """(x^3, y^3, z^3, xyz)"""
    return ideal(3, "x^3", "y^3", "z^3", "x*y*z")
