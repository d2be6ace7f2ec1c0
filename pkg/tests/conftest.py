import numpy as np
import pytest

from steplike import Interaction, StepPotential


@pytest.fixture
def pm_i():
    return StepPotential(1j, -1j)


@pytest.fixture
def free():
    return Interaction(0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
