from fractions import Fraction

import pytest
from hypothesis import strategies as st

from kaehleraut.poly import Polynomial


def polynomials(nvars: int, max_degree: int = 3, max_terms: int = 5, bound: int = 9):
    exps = st.tuples(*[st.integers(0, max_degree)] * nvars).filter(lambda e: sum(e) <= max_degree)
    return st.dictionaries(exps, st.integers(-bound, bound), max_size=max_terms).map(
        lambda d: Polynomial(nvars, d))


rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q.numerator) < 10 ** 6)


@pytest.fixture
def x2():
    return Polynomial.variable(2, 0), Polynomial.variable(2, 1)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
