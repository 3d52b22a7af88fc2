import os
import threading
from unittest.mock import patch

import pytest

from se2wavelet.config import get_settings
from se2wavelet.workers import grid_worker
from se2wavelet.workers.grid_worker import get_pool, parallel_map, shutdown_pools

pytestmark = pytest.mark.unit


@pytest.fixture(autouse=True)
def clean_pools():
    yield
    shutdown_pools()


def test_single_worker_runs_inline():
    """With SE2_THREADS=1 every job runs on the calling thread."""
    shutdown_pools()
    caller = threading.get_ident()
    threads = parallel_map(lambda _: threading.get_ident(), range(5))
    assert threads == [caller] * 5
    assert grid_worker._pools == {}


def test_results_keep_input_order():
    items = list(range(50))
    assert parallel_map(lambda x: x * x, items, workers=4) == [x * x for x in items]


def test_pools_are_shared_per_worker_count():
    assert get_pool(3) is get_pool(3)
    assert get_pool(3) is not get_pool(2)
    shutdown_pools()
    assert grid_worker._pools == {}


def test_worker_count_from_settings():
    with patch.dict(os.environ, {"SE2_THREADS": "3"}):
        get_settings.cache_clear()
        assert get_settings().worker_count == 3
        assert parallel_map(lambda x: x + 1, [1, 2, 3]) == [2, 3, 4]
        assert 3 in grid_worker._pools

    with patch.dict(os.environ, {"SE2_THREADS": "0"}):
        get_settings.cache_clear()
        assert get_settings().worker_count == (os.cpu_count() or 1)
    get_settings.cache_clear()


def test_errors_propagate():
    def boom(x):
        raise ValueError(f"bad item {x}")

    with pytest.raises(ValueError, match="bad item"):
        parallel_map(boom, [1, 2], workers=2)
