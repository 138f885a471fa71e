from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from typing import TypeVar

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(func: Callable[[T], R], items: Iterable[T], workers: int = 1) -> list[R]:
    """Apply `func` to every item and return results in input order.

    With workers > 1 the items are spread over a process pool; `func` must then be a picklable
    module-level function.
    """
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [func(item) for item in items]
    chunksize = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items, chunksize=chunksize))
