"""
Information criteria over a path of candidate models.

Every function accepts scalars or arrays (one entry per path column) and
returns +inf where the criterion is undefined, so traces stay totally ordered.
Additive constants such as n log(2 pi) are dropped throughout.
"""

from __future__ import annotations

import math
from typing import Callable, Mapping, Optional, Union

import numpy as np

from .types import CriterionTrace

ArrayLike = Union[float, np.ndarray]

CRITERIA = ("aicc", "aic", "cp", "bic")


def _log_rss(rss: ArrayLike, n: int) -> np.ndarray:
    rss = np.asarray(rss, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = n * np.log(rss / n)
    return np.where(rss > 0, out, np.inf)


def _scalar_or_array(value: np.ndarray) -> ArrayLike:
    return float(value) if value.ndim == 0 else value


def cp(rss: ArrayLike, df: ArrayLike, sigma2: float) -> ArrayLike:
    if not sigma2 > 0:
        raise ValueError(f"sigma2 must be positive, got {sigma2}")
    out = np.asarray(rss, dtype=float) + 2.0 * sigma2 * np.asarray(df, dtype=float)
    return _scalar_or_array(out)


def aic(rss: ArrayLike, df: ArrayLike, n: int) -> ArrayLike:
    return _scalar_or_array(_log_rss(rss, n) + 2.0 * np.asarray(df, dtype=float))


def aicc(rss: ArrayLike, df: ArrayLike, n: int) -> ArrayLike:
    """
    n log(RSS/n) + n (n + df) / (n - df - 2), or +inf at and beyond the pole
    df >= n - 2.
    """
    df = np.asarray(df, dtype=float)
    denom = n - df - 2.0
    with np.errstate(divide="ignore", invalid="ignore"):
        penalty = np.where(denom > 0, n * (n + df) / denom, np.inf)
    return _scalar_or_array(_log_rss(rss, n) + penalty)


def bic(rss: ArrayLike, df: ArrayLike, n: int) -> ArrayLike:
    return _scalar_or_array(
        _log_rss(rss, n) + math.log(n) * np.asarray(df, dtype=float)
    )


def err_kl_train(rss: ArrayLike, n: int) -> ArrayLike:
    return _scalar_or_array(_log_rss(rss, n) - n)


def err_kl_estimate(
    fitted: np.ndarray,
    rss: np.ndarray,
    mu: np.ndarray,
    sigma: float,
) -> CriterionTrace:
    """
    One replication's contribution to the expected KL testing error of each
    candidate: err_KL + n (n sigma^2 + |mu - mu_hat|^2) / RSS + n.

    `fitted` is (n, m), one column per candidate.  Averaging the returned values
    over replications estimates the expected KL error along the path.
    """
    fitted = np.asarray(fitted, dtype=float)
    mu = np.asarray(mu, dtype=float)
    rss = np.asarray(rss, dtype=float)
    n = fitted.shape[0]
    bias2 = np.sum((fitted - mu[:, None]) ** 2, axis=0)
    with np.errstate(divide="ignore", invalid="ignore"):
        optimism = np.where(rss > 0, n * (n * sigma**2 + bias2) / rss, np.inf)
    values = np.asarray(err_kl_train(rss, n)) + optimism + n
    return CriterionTrace.from_values("ErrKL", None, values)


_LABELS: Mapping[str, str] = {"aicc": "AICc", "aic": "AIC", "cp": "Cp", "bic": "BIC"}


def criterion_values(
    criterion: str,
    rss: np.ndarray,
    df: np.ndarray,
    n: int,
    sigma2: Optional[float] = None,
) -> np.ndarray:
    criterion = criterion.lower()
    if criterion == "cp":
        if sigma2 is None:
            raise ValueError("Cp needs a noise variance")
        return np.asarray(cp(rss, df, sigma2), dtype=float)
    fns: Mapping[str, Callable[[ArrayLike, ArrayLike, int], ArrayLike]] = {
        "aicc": aicc,
        "aic": aic,
        "bic": bic,
    }
    if criterion not in fns:
        raise ValueError(f"Unknown criterion {criterion!r}; choose from {CRITERIA}")
    return np.asarray(fns[criterion](rss, df, n), dtype=float)


def criterion_trace(
    criterion: str,
    rss: np.ndarray,
    df: np.ndarray,
    n: int,
    sigma2: Optional[float] = None,
    df_source: Optional[str] = None,
) -> CriterionTrace:
    values = criterion_values(criterion, rss, df, n, sigma2)
    return CriterionTrace.from_values(_LABELS[criterion.lower()], df_source, values)
