from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from tetrapack.model import build_dimer_packing, build_simple_packing

settings.register_profile(
    "default", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def dimer47():
    return build_dimer_packing(Fraction(4, 7))


@pytest.fixture(scope="session")
def simple():
    return build_simple_packing()
