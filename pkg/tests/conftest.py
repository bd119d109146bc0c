import math

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from donoghue_lab.measure import make_measure

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")

# Filled by test_acceptance.py and echoed once at the end of the session.
ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: (int(k.split(".")[0]), k)):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


finite_reals = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)
nonzero_Q = st.floats(min_value=-100, max_value=100).filter(lambda q: abs(q) > 1e-3)
positive_a = st.floats(min_value=1e-3, max_value=1e3)
below_one = st.floats(min_value=1e-3, max_value=1 - 1e-6)
above_one = st.floats(min_value=1 + 1e-6, max_value=1e3)
upper_z = st.builds(
    complex,
    st.floats(min_value=-50, max_value=50),
    st.floats(min_value=1e-2, max_value=50),
)
unimodular = st.floats(min_value=0, max_value=2 * math.pi).map(lambda t: complex(math.cos(t), math.sin(t)))
kappas = st.floats(min_value=0.0, max_value=0.95)


@st.composite
def measures(draw, min_size=1, max_size=12):
    n = draw(st.integers(min_size, max_size))
    positions = draw(
        st.lists(st.floats(min_value=-20, max_value=20), min_size=n, max_size=n, unique=True)
    )
    weights = draw(st.lists(st.floats(min_value=0.05, max_value=5), min_size=n, max_size=n))
    return make_measure(zip(positions, weights))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
