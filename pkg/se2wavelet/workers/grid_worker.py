import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Iterable, List, Optional, TypeVar

from se2wavelet.config import get_settings

logger: logging.Logger = logging.getLogger("worker")

T = TypeVar("T")
R = TypeVar("R")

# Pools keyed by worker count; numpy/BLAS release the GIL inside the heavy kernels
_pools: Dict[int, ThreadPoolExecutor] = {}


def get_pool(workers: Optional[int] = None) -> ThreadPoolExecutor:
    """Return the shared thread pool for the given (or configured) worker count"""
    count = workers if workers is not None else get_settings().worker_count
    count = max(1, int(count))
    if count not in _pools:
        _pools[count] = ThreadPoolExecutor(max_workers=count, thread_name_prefix="se2-grid")
        logger.debug(f"🔧 Started grid worker pool with {count} threads")
    return _pools[count]


def parallel_map(fn: Callable[[T], R], items: Iterable[T], workers: Optional[int] = None) -> List[R]:
    """
    Apply fn to every item, in parallel when more than one worker is configured.

    Results come back in input order, so reductions over them happen in a fixed order.
    """
    items = list(items)
    count = workers if workers is not None else get_settings().worker_count
    if count <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    logger.debug(f"Dispatching {len(items)} grid jobs to {count} workers")
    return list(get_pool(count).map(fn, items))


def shutdown_pools() -> None:
    for count, pool in list(_pools.items()):
        pool.shutdown(wait=True)
        del _pools[count]
