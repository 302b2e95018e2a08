import pytest

from concatspec.codes import LinearCode

# one line per acceptance criterion, filled in by tests/test_acceptance.py and
# echoed after the test run (survives pytest's output capture)
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
from concatspec.gf2 import BitMatrix
from concatspec.rng import SplitMix64


def random_bit_matrix(nrows, ncols, seed):
    rng = SplitMix64(seed)
    rows = [rng.next_u64() & ((1 << ncols) - 1) for _ in range(nrows)]
    return BitMatrix(nrows, ncols, rows)


def random_code(k, n, seed):
    """Random (n, k) code with a full-rank generator."""
    from concatspec import gf2

    rng = SplitMix64(seed)
    while True:
        rows = [rng.next_u64() & ((1 << n) - 1) for _ in range(k)]
        m = BitMatrix(k, n, rows)
        if gf2.rank(m) == k:
            return LinearCode(m)


@pytest.fixture
def rng():
    return SplitMix64(12345)
