import math

import pytest

from gqs.bouncer1d import scales, wavefunction
from gqs.constants import neutron_constants


@pytest.fixture(scope="session")
def consts():
    return neutron_constants()


@pytest.fixture(scope="session")
def tilted(consts):
    """Per-axis gravity scales of the tilted cavity, g_eff = g / sqrt(2)."""
    return scales(consts.g_earth / math.sqrt(2.0))


@pytest.fixture(scope="session")
def states(tilted):
    """Cached 1D eigenstates n = 0..5 for the tilted scales."""
    return [wavefunction(n, tilted) for n in range(6)]


@pytest.fixture(scope="session")
def ground(states):
    return states[0]
