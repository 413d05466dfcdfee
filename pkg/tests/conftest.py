import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from wfsw.fincat import FinAb, FinSet, terminal_category
from wfsw.probes import finab_upto, finset_upto, full_probes

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


@pytest.fixture
def S():
    return FinSet()


@pytest.fixture
def Ab():
    return FinAb()


@pytest.fixture
def terminal():
    return terminal_category()


@pytest.fixture(scope="session")
def finset2():
    C = finset_upto(2)
    return C, full_probes(C)


@pytest.fixture(scope="session")
def finset3():
    C = finset_upto(3)
    return C, full_probes(C, square_objects=C.objects[:3])


@pytest.fixture(scope="session")
def finab4():
    C = finab_upto(4)
    return C, full_probes(C, square_objects=C.objects[:3])


@pytest.fixture(scope="session")
def finab8():
    C = finab_upto(8)
    window = [C.obj(t) for t in [(), (2,), (3,), (4,)]]
    return C, full_probes(C, square_objects=window)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance.summary_lines():
        terminalreporter.write_line(line)
