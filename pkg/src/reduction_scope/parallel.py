"""Range-partitioned fan-out. Results always come back in range order."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable

from .primes import partition_range

# Each worker gets several ranges so uneven prime density evens out.
CHUNKS_PER_WORKER = 4


def map_ranges(fn: Callable[..., Any], lo: int, hi: int, workers: int, *args) -> list[Any]:
    """Call ``fn(a, b, *args)`` on disjoint subranges of [lo, hi]; return results in order.

    ``fn`` must be a module-level function so it can be pickled.
    """
    if workers <= 1:
        return [fn(lo, hi, *args)] if lo <= hi else []
    ranges = partition_range(lo, hi, workers * CHUNKS_PER_WORKER)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, a, b, *args) for a, b in ranges]
        return [f.result() for f in futures]
