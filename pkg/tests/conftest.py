import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def rand_sym(rng, n, scale=1.0):
    """Symmetrized standard-normal matrix (exactly symmetric by averaging)."""
    x = rng.standard_normal((n, n)) * scale
    return (x + x.T) / 2.0
