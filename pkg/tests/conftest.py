import os
import numpy as np
import pytest
from hyperjet.checks import default_generators_path
from hyperjet.data import read_generator_set

CONFIGS = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "configs")


@pytest.fixture
def configs_dir():
    return CONFIGS


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def octagon():
    return read_generator_set(default_generators_path())
