"""Deterministic data-parallel map.

Work items are evaluated independently and collected in input order, so any
reduction over the results sees the same operands in the same order whatever
the thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

ENV_THREADS = "GOWERSLAB_THREADS"


def resolve_threads(threads: int | None = None) -> int:
    if threads is None:
        env = os.environ.get(ENV_THREADS)
        threads = int(env) if env else 1
    if threads < 1:
        raise ValueError(f"thread count must be positive, got {threads}")
    return threads


def ordered_map(fn, items, threads: int | None = None) -> list:
    items = list(items)
    threads = resolve_threads(threads)
    if threads == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def chunks(seq, n_chunks: int) -> list:
    seq = list(seq)
    n_chunks = max(1, min(n_chunks, len(seq)))
    size, extra = divmod(len(seq), n_chunks)
    out, start = [], 0
    for i in range(n_chunks):
        stop = start + size + (1 if i < extra else 0)
        out.append(seq[start:stop])
        start = stop
    return out
