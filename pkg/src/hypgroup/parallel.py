"""Order-preserving chunked map over a process pool."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor


def chunks(n: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, n))
    step = -(-n // parts) if n else 0
    return [(i, min(i + step, n)) for i in range(0, n, step)] if n else []


def chunked_map(fn, args: list, workers: int = 1) -> list:
    """fn(*a) for a in args, results in input order whatever the worker count."""
    if workers <= 1 or len(args) <= 1:
        return [fn(*a) for a in args]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, *zip(*args)))
