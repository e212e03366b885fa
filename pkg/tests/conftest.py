import numpy as np
import pytest

from minkprop import QuadConfig


@pytest.fixture(scope="session")
def cfg() -> QuadConfig:
    return QuadConfig()


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(0)
