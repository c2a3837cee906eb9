import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ptlindblad.core_model import PTHamiltonian
from ptlindblad.lindblad import LindbladOperator

settings.register_profile("default", deadline=None, max_examples=100,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

R, S, PHI = 0.1, 0.2, np.pi / 3

angles = st.floats(-np.pi, np.pi, allow_nan=False)
small = st.floats(0.0, 1.0, allow_nan=False)


@st.composite
def pt_hamiltonians(draw, max_ratio=0.95):
    """PT-symmetric systems with r sin(varphi) / s bounded away from 1."""
    s = draw(st.floats(0.05, 1.0))
    varphi = draw(angles)
    ratio = draw(st.floats(0.0, max_ratio))
    sin = abs(np.sin(varphi))
    r = ratio * s / sin if sin > 1e-6 else draw(small)
    return PTHamiltonian(min(r, 10.0), s, varphi)


@st.composite
def operators(draw, min_size=0, max_size=3):
    n = draw(st.integers(min_size, max_size))
    return [LindbladOperator(draw(small), draw(small), draw(angles), draw(angles)) for _ in range(n)]


@pytest.fixture
def reference_system():
    return PTHamiltonian(R, S, PHI)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.RESULTS[number])
