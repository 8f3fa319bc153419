import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pslab import build_grid, default_grid  # noqa: E402


@pytest.fixture(scope="session")
def grid():
    return default_grid()


@pytest.fixture(scope="session")
def wide_grid():
    """Large enough to resolve every library state, including cat(d=6) and psi_5."""
    return build_grid(1.0, 16.0, 256)


@pytest.fixture(scope="session")
def small_grid():
    return build_grid(1.0, 8.0, 64)


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def report_criterion(request):
    """Record (and print) one pass/fail line for an acceptance criterion."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def record(number: int, passed: bool, detail: str) -> bool:
        line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"
        lines.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
