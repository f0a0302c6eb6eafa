import numpy as np
import pytest

from plasmonstack.geometry import LayerStack


def random_stack(rng, max_layers=12, xi_low=0.02, xi_high=20.0, min_gap=1e-4):
    """Random strictly-decreasing stack; resamples until gaps are nondegenerate."""
    while True:
        N = int(rng.integers(1, max_layers + 1))
        xi = np.sort(rng.uniform(xi_low, xi_high, size=N))[::-1]
        if N == 1 or np.diff(xi).max() <= -min_gap:
            return LayerStack(R=1.0, xi=tuple(xi))


@pytest.fixture
def rng():
    return np.random.default_rng(20250810)
