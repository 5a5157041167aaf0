import random

import pytest
from hypothesis import HealthCheck, settings

from cplogic.model import LocalAtom, Signature

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def sig_ab():
    return Signature.make(["a", "b"], [LocalAtom("p", "a"), LocalAtom("p", "b")])


@pytest.fixture
def sig_abc():
    return Signature.make(["a", "b", "c"], [LocalAtom("p", a) for a in "abc"])
