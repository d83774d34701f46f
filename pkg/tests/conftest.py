import pytest
from hypothesis import HealthCheck, settings

from uqtorus.slf import build_slf

settings.register_profile("exact", deadline=None, max_examples=25,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.load_profile("exact")


@pytest.fixture(scope="session")
def data2():
    return build_slf(2)


@pytest.fixture(scope="session")
def data3():
    return build_slf(3)
