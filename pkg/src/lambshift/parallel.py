"""Order-preserving maps for the (j,k) scans."""

from __future__ import annotations

import logging
import os
from concurrent.futures import Executor, ThreadPoolExecutor
from contextlib import contextmanager
from typing import Callable, Iterable, Iterator, TypeVar

_logger = logging.getLogger(__name__)

THREADS_ENVVAR = "LAMBSHIFT_THREADS"

T = TypeVar("T")
R = TypeVar("R")


def default_threads() -> int:
    raw = os.environ.get(THREADS_ENVVAR)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            _logger.warning("ignoring %s=%r, not an integer", THREADS_ENVVAR, raw)
    return os.cpu_count() or 1


def ordered_map(
    fn: Callable[[T], R], items: Iterable[T], executor: Executor | None = None
) -> list[R]:
    """fn over items, results in input order whatever the schedule."""

    if executor is None:
        return [fn(item) for item in items]
    return list(executor.map(fn, items))


@contextmanager
def scan_executor(threads: int) -> Iterator[Executor | None]:
    """A thread pool for ``threads > 1``, otherwise None (run inline)."""

    if threads <= 1:
        yield None
        return
    _logger.debug("starting scan pool with %d threads", threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        yield pool
