import random
from fractions import Fraction

import pytest

from seqspaces.core import Seq

ACCEPTANCE_LINES = []


def seeded_finite(seed, max_len=64, bound=1000):
    rng = random.Random(seed)
    n = rng.randint(1, max_len)
    vals = [Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(n)]
    if vals[-1] == 0:
        vals[-1] = Fraction(1)
    return vals


@pytest.fixture(scope="session")
def battery():
    """500 seeded finitely supported sequences (support <= 64, |num|, den <= 1000)."""
    lists = [seeded_finite(s) for s in range(500)]
    return [(vals, Seq.finite(vals)) for vals in lists]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
