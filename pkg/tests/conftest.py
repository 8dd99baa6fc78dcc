import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from abvpackets.kl import KLEngine  # noqa: E402


@pytest.fixture
def engine():
    return KLEngine()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.result_lines():
        terminalreporter.write_line(line)
