import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("nsquad", deadline=None, max_examples=50)
settings.load_profile("nsquad")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
