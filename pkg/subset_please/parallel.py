"""
Replication plumbing: counter-based random streams keyed by (seed, stream,
index...) and an order-preserving parallel map, so results never depend on the
number of worker threads.
"""

from __future__ import annotations

import logging
import os
from typing import Callable, Iterable, List, Optional, TypeVar

import numpy as np
from joblib import delayed, Parallel

logger = logging.getLogger(__name__)

THREADS_ENV = "SUBSET_PLEASE_THREADS"

# Stream namespaces; the first element of every spawn key.
STREAM_DESIGN = 0
STREAM_NOISE = 1
STREAM_FOLDS = 2
STREAM_BOOTSTRAP = 3
STREAM_EDF = 4

T = TypeVar("T")
R = TypeVar("R")


def resolve_threads(threads: Optional[int] = None) -> int:
    if threads is None:
        raw = os.environ.get(THREADS_ENV, "").strip()
        if not raw:
            return 1
        try:
            threads = int(raw)
        except ValueError:
            logger.warning("%s=%r is not an integer; using 1 thread", THREADS_ENV, raw)
            return 1
    return max(1, int(threads))


def rep_rng(seed: int, *key: int) -> np.random.Generator:
    """
    Philox generator for the stream `key` under the master `seed`.  The same
    (seed, key) always yields the same numbers, in any thread.
    """
    ss = np.random.SeedSequence(seed, spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def ordered_map(
    fn: Callable[[T], R], items: Iterable[T], threads: Optional[int] = None
) -> List[R]:
    items = list(items)
    threads = resolve_threads(threads)
    if threads == 1 or len(items) < 2:
        return [fn(item) for item in items]
    return list(
        Parallel(n_jobs=threads, prefer="threads")(delayed(fn)(item) for item in items)
    )


def derive_seed(seed: int, *key: int) -> int:
    """
    A child master seed for nested procedures (per-replication CV folds or
    bootstraps) that must not share streams with their parent.
    """
    ss = np.random.SeedSequence(seed, spawn_key=tuple(int(k) for k in key))
    return int(ss.generate_state(1, dtype=np.uint32)[0])
