"""Deterministic fan-out over independent cells.

Workers may run concurrently, but results are keyed and assembled in a
fixed order, so the output never depends on scheduling.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor


def parallel_map(fn, keys, threads: int = 1) -> dict:
    keys = list(keys)
    if threads <= 1 or len(keys) <= 1:
        return {k: fn(k) for k in keys}
    with ThreadPoolExecutor(max_workers=threads) as pool:
        values = list(pool.map(fn, keys))
    return dict(zip(keys, values))
