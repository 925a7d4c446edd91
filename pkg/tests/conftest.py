import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(key=(12345, 0)))


def batch_se(values: np.ndarray) -> float:
    """Standard error from batch means."""
    return float(np.std(values, ddof=1) / np.sqrt(len(values)))
