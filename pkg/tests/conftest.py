import sys

import pytest

from scenario_factory import baseline, random_scenarios


@pytest.fixture
def base():
    """Numerical-experiment baseline: v=(20, 15), D=(100, 10), sqrt, gamma=0.5."""
    return baseline()


@pytest.fixture(scope="session")
def fuzz_1000():
    return random_scenarios(1000, seed=20240601)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
