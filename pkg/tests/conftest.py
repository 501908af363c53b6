from pathlib import Path

import pytest

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "equibredon" / "fixtures"

ACCEPTANCE_LINES = []


@pytest.fixture
def fixture_path():
    return lambda name: str(FIXTURES / name)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
