import sys
from pathlib import Path

import pytest

from ioconf.lts import load_lts

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"

sys.path.insert(0, str(Path(__file__).resolve().parent))


def fixture_path(name):
    return FIXTURES / name


@pytest.fixture
def ex2():
    return load_lts(fixture_path("ex2.lts"))


@pytest.fixture
def ex6():
    return load_lts(fixture_path("ex6.lts"))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
