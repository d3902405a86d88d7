import sys

import pytest
from hypothesis import HealthCheck, settings

from ezdiv.formats import load_fixture
from ezdiv.homology import PairSetting

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def cube():
    return load_fixture("cube")


@pytest.fixture(scope="session")
def xquartic():
    return load_fixture("xquartic")


@pytest.fixture(scope="session")
def fatpoint():
    return load_fixture("fatpoint")


@pytest.fixture(scope="session")
def noembdim():
    return load_fixture("noembdim")


@pytest.fixture(scope="session")
def squarezero2():
    return load_fixture("squarezero2")


@pytest.fixture(scope="session")
def cube_pair(cube):
    return PairSetting.build(cube, "x^2")


@pytest.fixture(scope="session")
def xquartic_pair(xquartic):
    return PairSetting.build(xquartic, "x^2")


@pytest.fixture(scope="session")
def fatpoint_pair(fatpoint):
    return PairSetting.build(fatpoint, "x")


@pytest.fixture(scope="session")
def noembdim_pair(noembdim):
    return PairSetting.build(noembdim, "V")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results):
        ok, title = results[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {title}")
