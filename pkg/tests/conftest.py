import json
from pathlib import Path

import pytest

ORACLES = json.loads((Path(__file__).parent / "data" / "oracles.json").read_text())

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES = {}


@pytest.fixture(scope="session")
def oracles():
    return ORACLES


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
