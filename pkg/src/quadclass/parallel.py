"""Deterministic chunked parallelism.

Work is split into fixed-size chunks independent of the thread count and
results are reduced in chunk order, so numeric output is identical for
any number of workers.  The compiled kernels release the GIL, so threads
give real speedup when the extension is active.
"""

import os
from concurrent.futures import ThreadPoolExecutor


def default_threads():
    """Thread count from QUADCLASS_THREADS, defaulting to 1."""
    try:
        return max(1, int(os.environ.get("QUADCLASS_THREADS", "1")))
    except ValueError:
        return 1


def chunk_ranges(lo, hi, size):
    """Yield (a, b) pairs covering [lo, hi) in chunks of ``size``."""
    a = lo
    while a < hi:
        b = min(a + size, hi)
        yield (a, b)
        a = b


def chunk_list(items, size):
    """Split a list into chunks of ``size``."""
    return [items[i : i + size] for i in range(0, len(items), size)]


def run_ordered(worker, jobs, threads):
    """Map ``worker`` over ``jobs`` and return results in job order."""
    jobs = list(jobs)
    if threads is None:
        threads = default_threads()
    if threads <= 1 or len(jobs) <= 1:
        return [worker(j) for j in jobs]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(worker, jobs))
