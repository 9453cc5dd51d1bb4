import logging

import numpy as np
import pytest

from eigendesign.utils.logger import logger
from eigendesign.utils.rng import SEED_ENV


@pytest.fixture(autouse=True)
def _clean_environment(monkeypatch):
    # A seed exported in the shell would change sampled results.
    monkeypatch.delenv(SEED_ENV, raising=False)
    level = logger.level
    yield
    logger.setLevel(level or logging.INFO)


@pytest.fixture
def staircase_t():
    """Prior spectrum used throughout the water-filling examples."""
    return np.array([1.0, 1.1, 1.1, 1.3, 3.0])


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)
