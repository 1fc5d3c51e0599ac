import random

import pytest
from hypothesis import strategies as st

from propveto.prefmodel import Profile

# Candidates a..e are 0..4.
EXAMPLE1 = ["ebcda", "becda", "dbeca", "acdeb"]
EXAMPLE1_FIVE = EXAMPLE1 + ["cadbe"]


@pytest.fixture
def example1():
    return Profile.from_letters(EXAMPLE1)


@pytest.fixture
def example1_five():
    return Profile.from_letters(EXAMPLE1_FIVE)


def random_profile(rng: random.Random, n: int, m: int) -> Profile:
    return Profile.from_orders([rng.sample(range(m), m) for _ in range(n)])


@st.composite
def profiles(draw, max_n=6, max_m=6, min_n=1, min_m=1):
    n = draw(st.integers(min_n, max_n))
    m = draw(st.integers(min_m, max_m))
    orders = [draw(st.permutations(list(range(m)))) for _ in range(n)]
    return Profile.from_orders(orders)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
