"""Order-preserving thread map.

Results never depend on ``workers``: callers split work into chunks whose
boundaries are fixed independently of the worker count, and reduce the chunk
results in chunk order.
"""

from concurrent.futures import ThreadPoolExecutor


def pmap(fn, items, workers=1):
    items = list(items)
    if workers is None or workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def fixed_chunks(seq, size):
    """Split ``seq`` into consecutive slices of length ``size`` (last may be short)."""
    return [seq[i:i + size] for i in range(0, len(seq), size)]
