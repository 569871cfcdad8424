import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from involutive_upsilon import staircase_from_steps, steps_from_torus_knot


@pytest.fixture(scope="session")
def t37():
    return staircase_from_steps(steps_from_torus_knot(3, 7))


@pytest.fixture(scope="session")
def t23():
    return staircase_from_steps(steps_from_torus_knot(2, 3))


@pytest.fixture(scope="session")
def t25():
    return staircase_from_steps(steps_from_torus_knot(2, 5))
