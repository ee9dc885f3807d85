from __future__ import annotations

import os
from typing import Optional, Sequence

import numpy as np

from ..types import Dataset

SLOW = bool(os.environ.get("SUBSET_PLEASE_SLOW"))


def random_dataset(
    n: int,
    p: int,
    seed: int = 0,
    beta: Optional[Sequence[float]] = None,
    sigma: float = 1.0,
    intercept: float = 0.0,
) -> Dataset:
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, p))
    b = np.zeros(p)
    if beta is not None:
        b[: len(beta)] = beta
    y = intercept + X @ b + sigma * rng.standard_normal(n)
    return Dataset(X, y)


def orthonormal_design(n: int, p: int, seed: int = 0) -> np.ndarray:
    """
    n x p with centered, orthonormal columns.
    """
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, p))
    A -= A.mean(axis=0)
    Q, _ = np.linalg.qr(A)
    return Q


def orthonormal_dataset(
    n: int, p: int, seed: int = 0, beta: Optional[Sequence[float]] = None, sigma: float = 1.0
) -> Dataset:
    X = orthonormal_design(n, p, seed)
    rng = np.random.default_rng(seed + 1)
    b = np.zeros(p)
    if beta is not None:
        b[: len(beta)] = beta
    return Dataset(X, X @ b + sigma * rng.standard_normal(n))
