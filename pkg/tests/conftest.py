import numpy as np
import pytest

from sspace.catalog import registry, stable_seed


@pytest.fixture(scope="session")
def reg():
    return registry()


@pytest.fixture()
def rng_for():
    def make(label: str, seed: int = 42) -> np.random.Generator:
        return np.random.default_rng(stable_seed(seed, label))

    return make
