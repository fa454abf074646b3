import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from charp.harness.dsl import builtin_catalog_dir, load_entry  # noqa: E402

CATALOG = builtin_catalog_dir()


def entry(name):
    return load_entry(os.path.join(CATALOG, name + ".ring"))


@pytest.fixture(scope="session")
def catalog_dir():
    return CATALOG


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
