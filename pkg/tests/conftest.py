import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

from contactlab import corpus  # noqa: E402


@pytest.fixture(scope="session")
def ex1():
    return corpus.get("example_dim3")


@pytest.fixture(scope="session")
def ex3():
    return corpus.get("example_dim5")


@pytest.fixture(scope="session")
def product():
    return corpus.get("product")


@pytest.fixture(scope="session")
def product_rescaled():
    return corpus.get("product_rescaled")


@pytest.fixture(scope="session")
def flat5():
    return corpus.get("flat5")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
