"""General pytest fixtures"""

import mpmath
import pytest
from _pytest.mark import Mark

from stirling_gautschi import GridScanner, TailPolicy


# Define a "slow" test marker so that the full-grid scans can run at the end
# ref: https://docs.pytest.org/en/6.0.1/example/simple.html#control-skipping-of-tests-according-to-command-line-option
empty_mark = Mark("", [], {})


def by_slow_marker(item):
    return item.get_closest_marker("slow", default=empty_mark)


def pytest_addoption(parser):
    parser.addoption("--slow-last", action="store_true", default=False)


def pytest_collection_modifyitems(items, config):
    if config.getoption("--slow-last"):
        items.sort(key=by_slow_marker)


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: marks tests as slow.")


@pytest.fixture(scope="session", autouse=True)
def mp_precision():
    """50 significant digits for every mpmath oracle value"""
    mpmath.mp.dps = 50
    yield
    mpmath.mp.dps = 15


@pytest.fixture
def policy():
    return TailPolicy(1e-10)


@pytest.fixture
def scanner(monkeypatch):
    """A GridScanner that ignores any SG_TOL of the calling shell"""
    monkeypatch.delenv("SG_TOL", raising=False)
    scanner = GridScanner(workers=2)
    yield scanner
    scanner.executor.shutdown()


