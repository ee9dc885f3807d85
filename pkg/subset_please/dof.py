"""
Degrees of freedom for best subset selection.

Under an orthonormal design, the Lagrangian (hard-thresholding) form of best
subset has closed-form expected size E(k_L(lambda)) and df_L(lambda).  The
heuristic df at subset size k is df_L at the lambda whose expected size is k.
Covariance-based edf is also estimated directly, by Monte Carlo from a known
mean or by parametric bootstrap from an estimated one.
"""

from __future__ import annotations

import logging
import math
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.special import ndtr, ndtri

from .parallel import ordered_map, rep_rng, STREAM_BOOTSTRAP, STREAM_EDF
from .types import Dataset, DfProfile, SolutionPath

logger = logging.getLogger(__name__)

HDF_TOL = 1e-8
HDF_MAX_ITER = 200

# Replications fitted per parallel batch before accumulation.
_CHUNK = 64

_SQRT_2PI = math.sqrt(2.0 * math.pi)

# (X, y) -> fitted values, one column per candidate model, column 0 the null fit
FittingRule = Callable[[np.ndarray, np.ndarray], np.ndarray]


class RootFindingError(ArithmeticError):
    pass


def norm_pdf(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return np.exp(-0.5 * x * x) / _SQRT_2PI


def _check_sigma(sigma: float) -> None:
    if not sigma > 0 or not math.isfinite(sigma):
        raise ValueError(f"sigma must be positive and finite, got {sigma}")


def _size_at(u: float, xtmu: np.ndarray, sigma: float) -> float:
    # 1 - Phi(a) is evaluated as Phi(-a) to keep the upper tail accurate
    return float(np.sum(ndtr((xtmu - u) / sigma) + ndtr((-u - xtmu) / sigma)))


def _df_at(u: float, xtmu: np.ndarray, sigma: float) -> float:
    correction = np.sum(norm_pdf((u - xtmu) / sigma) + norm_pdf((-u - xtmu) / sigma))
    return _size_at(u, xtmu, sigma) + (u / sigma) * float(correction)


def expected_size(lam: float, xtmu: np.ndarray, sigma: float) -> float:
    """
    E(k_L(lambda)): expected number of |z_i| >= sqrt(2 lambda) when
    z ~ N(X'mu, sigma^2 I).
    """
    _check_sigma(sigma)
    if lam < 0:
        raise ValueError(f"lambda must be nonnegative, got {lam}")
    return _size_at(math.sqrt(2.0 * lam), np.asarray(xtmu, dtype=float), sigma)


def df_lagrangian(lam: float, xtmu: np.ndarray, sigma: float) -> float:
    _check_sigma(sigma)
    if lam < 0:
        raise ValueError(f"lambda must be nonnegative, got {lam}")
    return _df_at(math.sqrt(2.0 * lam), np.asarray(xtmu, dtype=float), sigma)


def hdf(k: int, xtmu: np.ndarray, sigma: float) -> Tuple[float, float]:
    """
    Returns (hdf(k), lambda*_k).

    lambda*_k solves E(k_L(lambda)) = k, found by bisection on
    u = sqrt(2 lambda) over [0, max|X'mu| + sigma * Phi^-1(1 - 1/(4K))], where
    the expected size falls below 1.
    """
    _check_sigma(sigma)
    xtmu = np.asarray(xtmu, dtype=float)
    K = len(xtmu)
    if k == 0:
        return 0.0, math.inf
    if not 1 <= k <= K:
        raise ValueError(f"k={k} outside [0, {K}]")
    if k == K:
        return _df_at(0.0, xtmu, sigma), 0.0

    lo = 0.0
    hi = float(np.max(np.abs(xtmu))) + sigma * float(ndtri(1.0 - 1.0 / (4.0 * K)))
    u = hi
    resid = math.inf
    for iteration in range(1, HDF_MAX_ITER + 1):
        u = 0.5 * (lo + hi)
        resid = _size_at(u, xtmu, sigma) - k
        if abs(resid) < HDF_TOL:
            logger.debug("hdf(%d): converged in %d steps, u=%g", k, iteration, u)
            return _df_at(u, xtmu, sigma), 0.5 * u * u
        if resid > 0:
            lo = u
        else:
            hi = u
    raise RootFindingError(
        f"hdf({k}) did not converge in {HDF_MAX_ITER} iterations: "
        f"bracket [{lo!r}, {hi!r}], last u={u!r}, E(k_L) - k = {resid:.3g}"
    )


def hdf_profile(
    xtmu: np.ndarray, sigma: float, mu_hat: Optional[np.ndarray] = None
) -> DfProfile:
    """
    hdf for every subset size 0..K, with the matching lambda*.
    """
    xtmu = np.asarray(xtmu, dtype=float)
    K = len(xtmu)
    values = np.zeros(K + 1)
    lambda_star = np.full(K + 1, math.inf)
    for k in range(1, K + 1):
        values[k], lambda_star[k] = hdf(k, xtmu, sigma)
    return DfProfile("hdf", values, lambda_star, mu_hat, sigma)


def hdf_null_closed_form(k: int, p: int) -> float:
    """
    hdf(k) when the true mean is zero: k - 2p q phi(q), q = Phi^-1(k / 2p).
    """
    if not 1 <= k <= p:
        raise ValueError(f"k={k} outside [1, {p}]")
    q = float(ndtri(k / (2.0 * p)))
    return k - 2.0 * p * q * float(norm_pdf(q))


def ndf_profile(path: SolutionPath) -> DfProfile:
    return DfProfile(
        "ndf", np.array([len(s) for s in path.supports], dtype=float)
    )


def path_rule(builder: Callable[[Dataset], SolutionPath]) -> FittingRule:
    def rule(X: np.ndarray, y: np.ndarray) -> np.ndarray:
        return builder(Dataset(X, y)).predict(X)

    return rule


def orthogonal_bs_fits(X: np.ndarray, y: np.ndarray) -> np.ndarray:
    """
    Best-subset fitted values for every size when X has orthonormal, centered
    columns: the running sum of the columns ranked by |X'y|.
    """
    ybar = float(np.mean(y))
    z = X.T @ (y - ybar)
    rank = np.argsort(-np.abs(z), kind="stable")
    fits = np.empty((X.shape[0], X.shape[1] + 1))
    fits[:, 0] = ybar
    fits[:, 1:] = ybar + np.cumsum(X[:, rank] * z[rank], axis=1)
    return fits


def _covariance_df(
    method: str,
    rule: FittingRule,
    X: np.ndarray,
    mu: np.ndarray,
    sigma: float,
    reps: int,
    seed: int,
    stream: int,
    threads: Optional[int],
    demean_noise: bool,
) -> DfProfile:
    _check_sigma(sigma)
    if reps < 2:
        raise ValueError(f"Need at least 2 replications, got {reps}")
    X = np.asarray(X, dtype=float)
    mu = np.asarray(mu, dtype=float)
    n = X.shape[0]

    def one(r: int) -> Tuple[np.ndarray, np.ndarray]:
        eps = sigma * rep_rng(seed, stream, r).standard_normal(n)
        if demean_noise:
            eps -= eps.mean()
        return eps, rule(X, mu + eps)

    # Accumulated in replication order; both sides are shifted by mu.
    sum_e = np.zeros(n)
    sum_f: Optional[np.ndarray] = None
    sum_fe: Optional[np.ndarray] = None
    sum_s: Optional[np.ndarray] = None
    sum_s2: Optional[np.ndarray] = None
    for start in range(0, reps, _CHUNK):
        batch = ordered_map(one, range(start, min(start + _CHUNK, reps)), threads)
        for eps, fits in batch:
            fd = fits - mu[:, None]
            if sum_f is None:
                sum_f = np.zeros_like(fd)
                sum_fe = np.zeros_like(fd)
                sum_s = np.zeros(fd.shape[1])
                sum_s2 = np.zeros(fd.shape[1])
            elif fd.shape != sum_f.shape:
                raise ValueError(
                    f"Fitting rule returned {fd.shape[1]} models, "
                    f"expected {sum_f.shape[1]}"
                )
            s = fd.T @ eps / sigma**2
            sum_e += eps
            sum_f += fd
            sum_fe += fd * eps[:, None]
            sum_s += s
            sum_s2 += s * s
    assert sum_f is not None and sum_fe is not None
    assert sum_s is not None and sum_s2 is not None

    cov = (sum_fe - sum_f * sum_e[:, None] / reps) / (reps - 1)
    values = np.clip(cov.sum(axis=0) / sigma**2, 0.0, n)
    var_s = np.maximum(sum_s2 - sum_s**2 / reps, 0.0) / (reps - 1)
    std_errors = np.sqrt(var_s / reps)
    # Column 0 is the null fit, whose df is zero by definition.
    values[0] = 0.0
    std_errors[0] = 0.0
    return DfProfile(method, values, None, mu, sigma, std_errors)


def edf_monte_carlo(
    rule: FittingRule,
    X: np.ndarray,
    mu: np.ndarray,
    sigma: float,
    reps: int = 1000,
    seed: int = 42,
    threads: Optional[int] = None,
    demean_noise: bool = True,
) -> DfProfile:
    """
    Covariance-based df, (1 / sigma^2) sum_i cov(mu_hat_i, y_i), estimated from
    `reps` draws of y = mu + eps with X fixed (unbiased sample covariance).

    With `demean_noise` each draw is shifted to mean zero, so the intercept
    contributes nothing and df(0) = 0.
    """
    return _covariance_df(
        "edf", rule, X, mu, sigma, reps, seed, STREAM_EDF, threads, demean_noise
    )


def bdf_bootstrap(
    rule: FittingRule,
    data: Dataset,
    mu_hat: np.ndarray,
    sigma_hat: float,
    B: int = 100,
    seed: int = 42,
    threads: Optional[int] = None,
    demean_noise: bool = True,
) -> DfProfile:
    """
    Parametric-bootstrap edf: the Monte-Carlo estimator with responses drawn
    from N(mu_hat, sigma_hat^2 I).
    """
    return _covariance_df(
        "bdf",
        rule,
        data.X,
        mu_hat,
        sigma_hat,
        B,
        seed,
        STREAM_BOOTSTRAP,
        threads,
        demean_noise,
    )
