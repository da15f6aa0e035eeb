from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_REPORT: dict[int, str] = {}


@pytest.fixture(scope="session")
def acceptance_report():
    """Criterion number -> one-line PASS/FAIL summary, printed after the run."""
    return _REPORT


def pytest_terminal_summary(terminalreporter):
    if not _REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_REPORT):
        terminalreporter.write_line(_REPORT[k])
