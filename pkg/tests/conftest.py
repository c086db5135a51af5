import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from triadcrypt import SecretKeys  # noqa: E402


@pytest.fixture
def keys():
    """Reference experiment keys (t=2, p=293) for images up to 256x256."""
    return SecretKeys()


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(label, ok, detail)`` then assert ``ok``."""

    def record(label, ok, detail=""):
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}".rstrip())
        assert ok, f"{label}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
