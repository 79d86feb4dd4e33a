import os

import pytest
from hypothesis import HealthCheck, settings

from regsep.fixtures import counter_loop, dyck_acceptor, worked_example

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def fixture_vass():
    return worked_example()


@pytest.fixture
def d1():
    return dyck_acceptor(1)


@pytest.fixture
def plus_loop():
    return counter_loop()


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
