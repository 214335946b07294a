import numpy as np
import pytest
from hypothesis import strategies as st

from jacobi2d import example_diagonal_hopping, example_shifted_schrodinger, random_field, validate

ACCEPTANCE_LINES: list[str] = []


def record(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def zero_field(p1=3, p2=3):
    z = np.zeros((p1, p2))
    return validate({"p1": p1, "p2": p2, "a0": z, "a1": z, "b0": z, "b1": z})


@pytest.fixture
def ex1():
    return example_shifted_schrodinger(3, 3)


@pytest.fixture
def ex2():
    return example_diagonal_hopping(3, 3)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@st.composite
def fields(draw, max_period=5, real=False):
    """Random coefficient fields, drawn through a seed so shrinking stays cheap."""
    p1 = draw(st.integers(3, max_period))
    p2 = draw(st.integers(3, max_period))
    seed = draw(st.integers(0, 2**32 - 1))
    f = random_field(p1, p2, np.random.default_rng(seed))
    if real:
        f = validate({"p1": p1, "p2": p2, "a0": f.a0.real, "a1": f.a1.real, "b0": f.b0.real, "b1": f.b1})
    return f
