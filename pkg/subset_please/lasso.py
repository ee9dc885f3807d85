"""
Lasso path by cyclic coordinate descent with warm starts.

Minimizes (1 / 2n) |y - b0 - X b|^2 + lambda |b|_1 over a decreasing lambda
grid.  Columns are standardized to unit variance by default; coefficients are
always returned on the original scale.
"""

from __future__ import annotations

import logging
import warnings
from types import MappingProxyType
from typing import Iterable, List, Optional, Tuple

import numpy as np

from .linalg import center
from .types import Dataset, SolutionPath

logger = logging.getLogger(__name__)

LASSO_TOL = 1e-7
LASSO_MAX_ITER = 100_000


class ConvergenceWarning(UserWarning):
    pass


def soft_threshold(x: np.ndarray, t: float) -> np.ndarray:
    return np.sign(x) * np.maximum(np.abs(x) - t, 0.0)


def lasso_lambda_max(Xs: np.ndarray, yc: np.ndarray) -> float:
    return float(np.max(np.abs(Xs.T @ yc))) / Xs.shape[0]


def _sweep(
    Xs: np.ndarray,
    norm2: np.ndarray,
    b: np.ndarray,
    r: np.ndarray,
    threshold: float,
    coords: Iterable[int],
) -> float:
    """
    One pass of coordinate updates over `coords`, in place on `b` and the
    residual `r`.  Returns the largest change, in units of the fitted values.
    """
    n = Xs.shape[0]
    max_delta = 0.0
    for j in coords:
        if norm2[j] == 0.0:
            continue
        xj = Xs[:, j]
        old = b[j]
        rho = xj @ r + norm2[j] * old
        new = float(soft_threshold(rho, threshold)) / norm2[j]
        if new != old:
            r -= (new - old) * xj
            b[j] = new
            max_delta = max(max_delta, abs(new - old) * np.sqrt(norm2[j] / n))
    return max_delta


def _solve(
    Xs: np.ndarray,
    yc: np.ndarray,
    norm2: np.ndarray,
    b: np.ndarray,
    lam: float,
    tol: float,
    max_iter: int,
) -> Tuple[np.ndarray, int, bool]:
    # Full sweeps find the active set; inner sweeps polish it.
    n, p = Xs.shape
    threshold = n * lam
    r = yc - Xs @ b
    sweeps = 0
    everything = range(p)
    while sweeps < max_iter:
        sweeps += 1
        delta = _sweep(Xs, norm2, b, r, threshold, everything)
        if delta < tol:
            return b, sweeps, True
        active = np.flatnonzero(b)
        while sweeps < max_iter:
            sweeps += 1
            if _sweep(Xs, norm2, b, r, threshold, active) < tol:
                break
    return b, sweeps, False


def lasso_cd(
    data: Dataset,
    lambdas: Optional[Iterable[float]] = None,
    n_lambda: int = 100,
    ratio: float = 0.001,
    tol: float = LASSO_TOL,
    max_iter: int = LASSO_MAX_ITER,
    standardize: bool = True,
) -> SolutionPath:
    """
    Lasso solutions along `lambdas` (on the standardized scale when
    `standardize`), by default `n_lambda` log-spaced values from
    lambda_max = max|X's y| / n down to `ratio` * lambda_max.

    A lambda that exhausts `max_iter` sweeps raises a ConvergenceWarning and is
    flagged False in `metadata["converged"]`; its coefficients are still
    returned.
    """
    c = center(data)
    n, p = c.Xc.shape
    if standardize:
        scale = c.Xc.std(axis=0)
        scale[scale == 0.0] = 1.0
    else:
        scale = np.ones(p)
    Xs = c.Xc / scale
    norm2 = np.sum(Xs**2, axis=0)

    if lambdas is None:
        lam_max = lasso_lambda_max(Xs, c.yc)
        if lam_max == 0.0:
            grid = np.zeros(1)
        else:
            grid = np.geomspace(lam_max, ratio * lam_max, n_lambda)
    else:
        grid = np.asarray(list(lambdas), dtype=float)
        if grid.ndim != 1 or grid.size == 0:
            raise ValueError("lambdas must be a non-empty sequence")
        if np.any(grid < 0):
            raise ValueError("lambdas must be nonnegative")
        if np.any(np.diff(grid) > 0):
            raise ValueError("lambdas must be decreasing")

    coefs = np.zeros((p, len(grid)))
    converged: List[bool] = []
    sweeps: List[int] = []
    b = np.zeros(p)
    for i, lam in enumerate(grid):
        b, used, ok = _solve(Xs, c.yc, norm2, b, float(lam), tol, max_iter)
        if not ok:
            warnings.warn(
                f"Lasso did not converge at lambda={lam:.4g} in {max_iter} sweeps",
                ConvergenceWarning,
                stacklevel=2,
            )
        converged.append(ok)
        sweeps.append(used)
        coefs[:, i] = b / scale
    logger.debug("lasso path: %d lambdas, %d sweeps", len(grid), sum(sweeps))

    resid = c.yc[:, None] - c.Xc @ coefs
    return SolutionPath(
        method="LASSO",
        coefs=coefs,
        intercepts=c.ybar - c.xbar @ coefs,
        supports=tuple(
            tuple(int(j) for j in np.flatnonzero(coefs[:, i])) for i in range(len(grid))
        ),
        rss=np.sum(resid**2, axis=0),
        n=n,
        lambdas=grid,
        metadata=MappingProxyType(
            {
                "converged": tuple(converged),
                "sweeps": tuple(sweeps),
                "standardize": standardize,
            }
        ),
    )


def lasso_objective(data: Dataset, coef: np.ndarray, lam: float) -> float:
    """
    (1 / 2n) |yc - Xc coef|^2 + lam |coef|_1, on the unstandardized scale.
    """
    c = center(data)
    r = c.yc - c.Xc @ np.asarray(coef, dtype=float)
    return float(r @ r) / (2.0 * data.n) + lam * float(np.sum(np.abs(coef)))
