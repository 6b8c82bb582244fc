import math
from pathlib import Path

import numpy as np
import pytest

from zetamoments.explicit_formula import load_zeros
from zetamoments.primes import sieve
from zetamoments.statistics import TGrid, scan

ROOT = Path(__file__).resolve().parents[1]
ZEROS_PATH = ROOT / "data" / "zeros_100k.txt"
REFERENCE_GRID = TGrid(1e6, 1e6 + 1e3, 0.01)

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)


@pytest.fixture
def report(request):
    """Print and keep one pass/fail line for an acceptance criterion."""

    def _report(number, ok, detail):
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}: {detail}"
        print(line)
        request.config.stash[_LINES].append(line)
        return ok

    return _report


@pytest.fixture(scope="session")
def zeros():
    return load_zeros(ZEROS_PATH)


@pytest.fixture(scope="session")
def primes_1e6():
    return sieve(10**6)


@pytest.fixture(scope="session")
def reference_scan():
    return scan(REFERENCE_GRID)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def rel(a, b):
    return abs(a - b) / max(abs(b), math.ulp(1.0))
