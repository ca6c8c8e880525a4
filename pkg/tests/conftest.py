import pytest
from hypothesis import HealthCheck, settings

from sblearn.pwf import parse_representation

settings.register_profile("default", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

GAMMA1_TEXT = "((-inf, -2/3), B)([-2/3, 1/2], A)((1/2, 3/2], B)((3/2, inf), A)"


@pytest.fixture
def gamma1():
    return parse_representation(GAMMA1_TEXT)
