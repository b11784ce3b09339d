import pytest
from hypothesis import HealthCheck, settings

from paracontact import catalog
from paracontact.symkernel import SamplerConfig

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def S0():
    return catalog.s0()


@pytest.fixture(scope="session")
def S1():
    return catalog.s1()


@pytest.fixture(scope="session")
def S2():
    return catalog.s2()


@pytest.fixture(scope="session")
def R3():
    return catalog.R3


@pytest.fixture
def sampler():
    return SamplerConfig()


@pytest.fixture
def small_sampler():
    return SamplerConfig(samples=20)


# -- acceptance criteria: one pass/fail line each in the terminal summary

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    prev = _CRITERIA.get(n, (title, True))
    _CRITERIA[n] = (title, prev[1] and not rep.failed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, ok = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {title}")
