"""Deterministic range-partitioned execution over a process pool."""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Optional, TypeVar

from src.settings import get_defaults

logger = logging.getLogger(__name__)

T = TypeVar("T")


def chunk_ranges(total: int, chunk: Optional[int] = None) -> list[tuple[int, int]]:
    """Split [0, total) into contiguous ranges of a fixed size.

    The split depends only on ``total`` and ``chunk``, never on the worker count.
    """
    chunk = chunk or get_defaults().sampling.chunk_size
    return [(start, min(start + chunk, total)) for start in range(0, total, chunk)]


def run_partitioned(
    func: Callable[[int, int], T],
    total: int,
    jobs: int = 1,
    chunk: Optional[int] = None,
) -> list[T]:
    """Apply ``func(start, stop)`` to every chunk of [0, total).

    Args:
        func: Picklable callable (module-level function or functools.partial)
        total: Number of work items
        jobs: Worker processes; 1 runs inline
        chunk: Items per chunk (defaults to sampling.chunk_size)

    Returns:
        Per-chunk results in chunk order
    """
    ranges = chunk_ranges(total, chunk)
    if not ranges:
        return []
    starts = [r[0] for r in ranges]
    stops = [r[1] for r in ranges]

    if jobs <= 1 or len(ranges) == 1:
        return [func(start, stop) for start, stop in ranges]

    workers = min(jobs, len(ranges))
    logger.debug("running %d chunks on %d workers", len(ranges), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves submission order, so the merge order is fixed
        return list(pool.map(func, starts, stops))
