"""
Turanflag Worker Pool - Order-preserving parallel map over independent jobs
"""

import logging
import multiprocessing as mp
from typing import Callable, List, Sequence, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(func: Callable[[T], R], items: Sequence[T], workers: int = 1) -> List[R]:
    """
    Apply ``func`` to every item, optionally in a process pool.

    Results come back in input order whatever the schedule, so callers get
    identical output for any worker count.

    Args:
        func: Module-level (picklable) function
        items: Job arguments
        workers: Process count; 1 or fewer runs in-process

    Returns:
        List of results aligned with ``items``
    """
    if workers <= 1 or len(items) < 2:
        return [func(item) for item in items]
    logger.debug("mapping %d jobs over %d processes", len(items), workers)
    with mp.Pool(processes=workers) as pool:
        return pool.map(func, items)
