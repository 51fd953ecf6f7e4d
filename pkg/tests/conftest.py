import numpy as np
import pytest
from django.core.cache import cache


@pytest.fixture(autouse=True)
def clear_table_cache():
    cache.clear()
    yield
    cache.clear()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
