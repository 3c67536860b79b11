import functools
import sys

import pytest

from relmax.catalog import build_group, build_product


@functools.lru_cache(maxsize=None)
def group(name):
    # shared instances keep lattice caches warm across tests
    return build_group(name)


@functools.lru_cache(maxsize=None)
def product(name):
    return build_product(name)


@pytest.fixture
def G():
    return group


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
