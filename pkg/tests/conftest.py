import numpy as np
import pytest

from divisorlab import divisor_core


@pytest.fixture(scope="session")
def table_1e4():
    return divisor_core.sieve_divisors(10**4, 2)


@pytest.fixture(scope="session")
def table_1e6():
    return divisor_core.sieve_divisors(10**6, 2)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240901)
