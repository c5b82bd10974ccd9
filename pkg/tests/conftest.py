import random
import sys
from functools import lru_cache
from pathlib import Path

import pytest

from gentlekit import fixtures
from gentlekit.constructions import GenerationFailed, random_gentle

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LINES = []


@lru_cache(maxsize=None)
def corpus(size: int, max_n: int = 12, seed: int = 2024):
    """``size`` random gentle quivers with at most ``max_n`` vertices."""
    rng = random.Random(seed)
    out = []
    s = 0
    while len(out) < size:
        n = rng.randint(1, max_n)
        m = rng.randint(max(1, n - 1), 2 * n - 1)
        try:
            out.append(random_gentle(n, m, seed * 100_000 + s))
        except GenerationFailed:
            pass
        s += 1
    return tuple(out)


FIXTURE_NAMES = ("EX1", "A2", "KR", "EX2")


@pytest.fixture
def ex1():
    return fixtures.ex1()


@pytest.fixture
def a2():
    return fixtures.a2()


@pytest.fixture
def kr():
    return fixtures.kr()


@pytest.fixture
def ex2():
    return fixtures.ex2()


@pytest.fixture(params=FIXTURE_NAMES)
def fixture_quiver(request):
    return fixtures.load(request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":").split(".")[0])):
            terminalreporter.write_line(line)
