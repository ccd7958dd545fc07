import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kprim.primes import sieve  # noqa: E402


@pytest.fixture(scope="session")
def table():
    return sieve(10**6)


@pytest.fixture(scope="session")
def small_table():
    return sieve(10**4)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record():
    """Collects one summary line per acceptance criterion."""
    def _record(line: str) -> None:
        ACCEPTANCE_LINES.append(line)
        print(line)
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
