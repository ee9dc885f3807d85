"""
Centering, column-append QR by modified Gram-Schmidt, back substitution and
least squares.  Every path algorithm in this package is built on these.
"""

from __future__ import annotations

import logging
from typing import Tuple

import numpy as np
import scipy.linalg

from .types import CenteredData, Dataset, InvalidData, QRState

logger = logging.getLogger(__name__)

# Relative residual norm below which an appended column counts as dependent.
EPS_RANK = 1e-10
# Reorthogonalize when the residual keeps less than this share of the norm.
REORTH_RATIO = 0.1


class RankDeficient(ArithmeticError):
    def __init__(self, index: int, relative_residual: float) -> None:
        super().__init__(
            f"Column {index} lies in the span of the current basis "
            f"(relative residual {relative_residual:.3g})"
        )
        self.index = index
        self.relative_residual = relative_residual


class SingularSystem(ArithmeticError):
    pass


def center(data: Dataset) -> CenteredData:
    if not (np.all(np.isfinite(data.X)) and np.all(np.isfinite(data.y))):
        raise InvalidData("Cannot center non-finite data")
    xbar = data.X.mean(axis=0)
    ybar = float(data.y.mean())
    return CenteredData(data.X - xbar, data.y - ybar, xbar, ybar, data.names)


def _project_out(Q: np.ndarray, v: np.ndarray, r: np.ndarray) -> None:
    # Modified Gram-Schmidt: subtract one direction at a time, in place.
    for j in range(Q.shape[1]):
        qj = Q[:, j]
        c = qj @ v
        r[j] += c
        v -= c * qj


def qr_append(state: QRState, x: np.ndarray, index: int) -> QRState:
    """
    Returns the factorization of [X_order, x], appending `index` to the order.

    Raises RankDeficient when x is numerically in the span of Q; `state` is
    left untouched so callers can skip the column and continue.
    """
    if index in state.order:
        raise ValueError(f"Column {index} is already in the factorization")
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != state.Q.shape[0]:
        raise InvalidData(f"Expected a vector of length {state.Q.shape[0]}")
    if not np.all(np.isfinite(x)):
        raise InvalidData(f"Column {index} has non-finite entries")

    norm0 = float(np.linalg.norm(x))
    k = state.k
    v = x.copy()
    r = np.zeros(k)
    _project_out(state.Q, v, r)
    nv = float(np.linalg.norm(v))
    if nv < REORTH_RATIO * norm0:
        _project_out(state.Q, v, r)
        nv = float(np.linalg.norm(v))

    if norm0 == 0.0 or nv < EPS_RANK * norm0:
        raise RankDeficient(index, nv / norm0 if norm0 else 0.0)

    Q = np.column_stack([state.Q, v / nv])
    R = np.zeros((k + 1, k + 1))
    R[:k, :k] = state.R
    R[:k, k] = r
    R[k, k] = nv
    return QRState(Q, R, state.order + (index,), state.residual_cache)


def back_solve(R: np.ndarray, gamma: np.ndarray) -> np.ndarray:
    """
    Solves R @ beta = gamma for upper-triangular R; gamma may be a vector or a
    matrix of right-hand sides.
    """
    R = np.asarray(R, dtype=float)
    diag = np.diag(R)
    if R.size and np.any(diag == 0.0):
        raise SingularSystem(
            f"Zero diagonal entry at position {int(np.flatnonzero(diag == 0.0)[0])}"
        )
    if R.size == 0:
        return np.zeros_like(np.asarray(gamma, dtype=float))
    return scipy.linalg.solve_triangular(R, gamma, lower=False)


def ols(X: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, float]:
    """
    Least squares without intercept; returns (coef, rss).
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    n, k = X.shape
    if k == 0:
        return np.zeros(0), float(y @ y)
    if k > n:
        raise SingularSystem(f"{k} columns but only {n} rows")

    Q, R = np.linalg.qr(X)
    diag = np.abs(np.diag(R))
    scale = np.linalg.norm(X, axis=0)
    if np.any(diag <= EPS_RANK * np.maximum(scale, np.finfo(float).tiny)):
        raise SingularSystem("Design is rank deficient")
    coef = scipy.linalg.solve_triangular(R, Q.T @ y, lower=False)
    resid = y - X @ coef
    return coef, float(resid @ resid)
