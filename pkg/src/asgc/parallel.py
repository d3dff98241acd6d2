"""Order-preserving map with optional thread parallelism.

Work items must not share mutable state; every experiment item derives its
own RNG stream from spawn keys, so results are identical for any ``jobs``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor


def parallel_map(fn, items, jobs: int = 1) -> list:
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))
