import os
import sys
from typing import Generator
from unittest.mock import patch

import numpy as np
import pytest

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from se2wavelet.config import get_settings
from se2wavelet.routers.circle.circle_model import CircleFunction
from se2wavelet.routers.irrep.irrep_model import IrrepParams
from se2wavelet.routers.plane.plane_model import PlaneFunction


@pytest.fixture(autouse=True)
def mock_env_vars() -> Generator[None, None, None]:
    """Pin settings for tests: single worker, default tolerances, no .env leakage."""
    test_config = {
        "APP_ENV": "test",
        "SE2_THREADS": "1",
        "CIRCLE_SAMPLES": "256",
        "REPORT_TIMINGS": "false",
        "LOG_ONLY": "",
        "LOG_PRESET": "minimal",
        "PERFORMANCE_LOG": "",
    }

    with patch.dict(os.environ, test_config):
        get_settings.cache_clear()
        yield
    get_settings.cache_clear()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def omega_two() -> IrrepParams:
    return IrrepParams(omega=2.0)


@pytest.fixture
def random_circle(rng):
    """Factory for seeded band-limited circle functions"""
    def make(n_samples: int = 256, max_mode: int = 8) -> CircleFunction:
        return CircleFunction.band_limited(rng, n_samples, max_mode)
    return make


@pytest.fixture
def gaussian_plane() -> PlaneFunction:
    """exp(-|x|^2/2) on [-8, 8)^2 with m = 128"""
    return PlaneFunction.from_function(lambda x1, x2: np.exp(-(x1 ** 2 + x2 ** 2) / 2.0), 128, 8.0)


@pytest.fixture
def small_gaussian_plane() -> PlaneFunction:
    """exp(-|x|^2/2) on [-8, 8)^2 with m = 64, enough for ring values at |k| <= 2"""
    return PlaneFunction.from_function(lambda x1, x2: np.exp(-(x1 ** 2 + x2 ** 2) / 2.0), 64, 8.0)
