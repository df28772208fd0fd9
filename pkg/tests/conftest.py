import sys

import pytest

from deltalab.forms import form_table


@pytest.fixture(scope="session")
def delta_small():
    return form_table("delta", 4096)


@pytest.fixture(scope="session")
def eis_small():
    return form_table("eisenstein", 4096)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "LINES", {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for key in sorted(lines):
            terminalreporter.write_line(lines[key])
