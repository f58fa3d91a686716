import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_vector(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])
