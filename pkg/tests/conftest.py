import sys
import math

import numpy as np
import pytest
from hypothesis import strategies as st

from rotfact import UnitQuaternion


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def _to_quaternion(v):
    norm = math.sqrt(sum(x * x for x in v))
    return UnitQuaternion(*(x / norm for x in v))


unit_quaternions = (
    st.lists(st.floats(-1.0, 1.0, allow_nan=False), min_size=4, max_size=4)
    .filter(lambda v: sum(x * x for x in v) > 1e-4)
    .map(_to_quaternion)
)

angles = st.floats(-math.pi, math.pi, allow_nan=False)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("tests.test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
