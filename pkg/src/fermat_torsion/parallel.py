"""Order-preserving map over a process pool.

Results come back in input order, so output never depends on the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor


def effective_threads(threads: int | None) -> int:
    if threads is None or threads <= 0:
        return os.cpu_count() or 1
    return threads


def parallel_map(fn, items, threads: int | None = 1, chunksize: int | None = None) -> list:
    items = list(items)
    n = effective_threads(threads)
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    if chunksize is None:
        chunksize = max(1, len(items) // (4 * n))
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))
