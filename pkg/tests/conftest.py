import pytest
from hypothesis import HealthCheck, settings

from subadd.exactla import Field
from subadd.geometry import build_corpus
from subadd.modrep import GroupDesc

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

from acceptance_log import LINES as ACCEPTANCE_LINES


@pytest.fixture(scope="session")
def F2():
    return Field(2)


@pytest.fixture(scope="session")
def F3():
    return Field(3)


@pytest.fixture(scope="session")
def F4():
    return Field(2, 2)


@pytest.fixture(scope="session")
def G22():
    return GroupDesc(2, 2)


@pytest.fixture(scope="session")
def corpus22(G22, F2):
    return build_corpus(G22, F2, seed=0, size=30)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
