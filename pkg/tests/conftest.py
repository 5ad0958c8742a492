import math

import numpy as np
import pytest
from hypothesis import assume
from hypothesis import strategies as st

from catweak.state import CatState

PHI = math.pi / 2.02
SQ = 1 / math.sqrt(2)

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def fig1_state():
    return CatState.from_phi(PHI, 6.0, 0.01)


@pytest.fixture
def fig4_state():
    return CatState.from_phi(PHI, 1e-4, 1e-3)


def random_state(rng, min_denominator=0.05, x0_max=8.0, p0_max=4.0, hbar=1.0):
    """Random valid state with a bounded normalisation constant."""
    while True:
        v = rng.normal(size=4)
        a, b = complex(v[0], v[1]), complex(v[2], v[3])
        r = math.hypot(abs(a), abs(b))
        eta = rng.uniform(0.5, 2.0)
        x0 = rng.uniform(0, x0_max) * eta
        p0 = rng.uniform(0, p0_max) * hbar / eta
        try:
            s = CatState(a / r, b / r, x0, p0, eta, hbar)
        except ValueError:
            continue
        if s.norm_denominator >= min_denominator:
            return s


@st.composite
def cat_states(draw, max_x0=8.0, max_p0=4.0):
    re_a, im_a, re_b, im_b = (draw(st.floats(-1, 1)) for _ in range(4))
    r = math.sqrt(re_a**2 + im_a**2 + re_b**2 + im_b**2)
    if r < 1e-3:
        re_a, r = 1.0, math.sqrt(1.0 + im_a**2 + re_b**2 + im_b**2)
    eta = draw(st.floats(0.5, 2.0))
    x0 = draw(st.floats(0, max_x0)) * eta
    p0 = draw(st.floats(0, max_p0)) / eta
    a, b = complex(re_a, im_a) / r, complex(re_b, im_b) / r
    assume(1 + 2 * math.exp(-2 * p0**2 * eta**2 - x0**2 / (2 * eta**2)) * (a.conjugate() * b).real > 0.05)
    return CatState(a, b, x0, p0, eta)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)
