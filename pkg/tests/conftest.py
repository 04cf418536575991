import numpy as np
import pytest

from ballistic import PhysicalParams, SlitSource


@pytest.fixture
def params():
    # natural units: hbar = m = 1 so D = 0.5
    return PhysicalParams()


@pytest.fixture
def unit_source():
    return SlitSource(center=0.0, sigma0=1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20260816)
