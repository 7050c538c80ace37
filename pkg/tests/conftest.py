import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from chordlab import _kernels, tabulated_distance

settings.register_profile(
    "chordlab",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("chordlab")

HALF_PI = 0.5 * math.pi


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # compile the jitted kernels once, outside any timed assertion
    _kernels.warm_up()


@pytest.fixture
def make_random_density():
    """Factory for random positive piecewise-linear densities on [0, pi/2]."""
    def build(rng: np.random.Generator, nodes: int | None = None):
        k = int(nodes or rng.integers(8, 41))
        th = np.linspace(0.0, HALF_PI, k)
        pv = rng.random(k) ** 2 + 0.02
        return tabulated_distance(list(zip(th, pv)), name=f"random-{k}")
    return build
