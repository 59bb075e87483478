"""
Ordered work distribution over a thread pool.

Results always come back in input order, so reports do not depend on the
number of workers or on scheduling.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from quiver_cells import config
from quiver_cells.logging_utils import get_logger

logger = get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def map_ordered(func: Callable[[T], R], items: Iterable[T], threads: Optional[int] = None) -> List[R]:
    """
    Apply ``func`` to every item, possibly concurrently.

    Args:
        func: Work function; must not mutate shared state
        items: Inputs
        threads: Worker count (defaults to TQC_THREADS); 1 runs inline

    Returns:
        List of results in the order of ``items``
    """
    work = list(items)
    workers = max(1, threads if threads is not None else config.THREADS)
    if workers == 1 or len(work) <= 1:
        return [func(item) for item in work]
    logger.debug("dispatching %d tasks to %d workers", len(work), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, work))
