"""
Solution paths for least-squares subset selection.

BOSS and forward stepwise (FS) share one ordering and orthogonalization pass:
predictors enter by largest partial correlation with y, and their QR
factorization grows by one column per step.  BOSS then runs best subset on the
orthogonal basis (a ranking of |Q'y|), FS keeps the nested prefix, and both map
back to X through R.
"""

from __future__ import annotations

import logging
from types import MappingProxyType
from typing import Iterable, List, Optional, Tuple

import numpy as np
import scipy.linalg

from .linalg import center, EPS_RANK, ols, qr_append, RankDeficient, back_solve
from .types import CenteredData, Dataset, QRState, SolutionPath

logger = logging.getLogger(__name__)

MAX_EXHAUSTIVE_P = 25

# Below this d^2 / |x_j|^2 the Gram update is lost in cancellation and the
# residual norm d is recomputed from the columns.
_GRAM_REFINE = 1e-8


class CapabilityError(ValueError):
    pass


class NotApplicable(ValueError):
    pass


class DegenerateGrid(ValueError):
    pass


def orthogonalize(data: Dataset) -> Tuple[CenteredData, QRState]:
    """
    Orders the predictors and factors them, stopping at
    K_eff = min(n - 1, p, rank).

    The returned state's `residual_cache` holds every column's residual after
    projecting out the final basis.
    """
    c = center(data)
    n, p = data.n, data.p
    target = min(n - 1, p)

    state = QRState.empty(n)
    resid = np.array(c.Xc)
    col_norms = np.linalg.norm(c.Xc, axis=0)
    active = col_norms > 0

    while state.k < target:
        rn = np.linalg.norm(resid, axis=0)
        active &= rn >= EPS_RANK * col_norms
        if not active.any():
            break
        # |y'r_j| / |r_j| is |corr(y, r_j)| up to the constant |y|
        score = np.full(p, -1.0)
        score[active] = np.abs(c.yc @ resid[:, active]) / rn[active]
        j = int(np.argmax(score))
        active[j] = False
        try:
            state = qr_append(state, c.Xc[:, j], j)
        except RankDeficient:
            logger.debug("Skipping dependent column %d", j)
            continue
        q = state.Q[:, -1]
        resid -= np.outer(q, q @ resid)

    if state.k < target:
        logger.warning(
            "Path truncated at rank %d (expected %d): dependent predictors",
            state.k,
            target,
        )
    return c, QRState(state.Q, state.R, state.order, resid)


def _ranked_positions(z: np.ndarray) -> np.ndarray:
    """
    Position of each entry in the ranking by |z|, ties to the lower index.
    """
    pos = np.empty(len(z), dtype=int)
    pos[np.argsort(-np.abs(z), kind="stable")] = np.arange(len(z))
    return pos


def _kept_mask(method: str, z: np.ndarray) -> np.ndarray:
    # mask[i, k]: orthogonal direction i is in the model of size k
    K = len(z)
    sizes = np.arange(K + 1)[None, :]
    if method == "BOSS":
        return _ranked_positions(z)[:, None] < sizes
    return np.arange(K)[:, None] < sizes


def _orthogonal_path(method: str, data: Dataset) -> SolutionPath:
    c, state = orthogonalize(data)
    K = state.k
    z = state.Q.T @ c.yc
    mask = _kept_mask(method, z)
    gamma = z[:, None] * mask

    coefs = np.zeros((data.p, K + 1))
    coefs[list(state.order), :] = back_solve(state.R, gamma)
    resid = c.yc[:, None] - state.Q @ gamma
    order = np.array(state.order, dtype=int)
    supports = tuple(
        tuple(sorted(int(i) for i in order[mask[:, k]])) for k in range(K + 1)
    )
    return SolutionPath(
        method=method,
        coefs=coefs,
        intercepts=c.ybar - c.xbar @ coefs,
        supports=supports,
        rss=np.sum(resid**2, axis=0),
        n=data.n,
        order=state.order,
        z=z,
        metadata=MappingProxyType(
            {
                "rank": K,
                "truncated": K < min(data.n - 1, data.p),
                "basis": state,
            }
        ),
    )


def boss_path(data: Dataset) -> SolutionPath:
    """
    Best orthogonalized subset selection.  Costs O(n p K).
    """
    return _orthogonal_path("BOSS", data)


def fs_path(data: Dataset) -> SolutionPath:
    """
    Forward stepwise: the nested fits along the same ordering as BOSS.
    """
    return _orthogonal_path("FS", data)


def bs_orthogonal(z: np.ndarray, k: int) -> np.ndarray:
    """
    Keeps the k largest |z_i| (ties to the lower index) and zeroes the rest.
    """
    z = np.asarray(z, dtype=float)
    if not 0 <= k <= len(z):
        raise ValueError(f"k={k} outside [0, {len(z)}]")
    out = np.zeros_like(z)
    keep = _ranked_positions(z) < k
    out[keep] = z[keep]
    return out


def _residual_sq(
    Xc: np.ndarray, subset: Tuple[int, ...], R: np.ndarray, r: np.ndarray, j: int
) -> float:
    # R'R is the Gram matrix of the subset, so R^-1 r are the LS coefficients
    x = Xc[:, j]
    if subset:
        x = x - Xc[:, list(subset)] @ scipy.linalg.solve_triangular(R, r)
    return float(x @ x)


def bs_exhaustive(data: Dataset, k_max: Optional[int] = None) -> SolutionPath:
    """
    Best subset by enumeration: for each size, the minimal-RSS support, ties to
    the lexicographically smallest index set.

    Subsets are visited depth first in lexicographic order while the R factor
    of each prefix is extended one column at a time.
    """
    p = data.p
    if p > MAX_EXHAUSTIVE_P:
        raise CapabilityError(
            f"Exhaustive best subset is limited to p <= {MAX_EXHAUSTIVE_P} "
            f"(got p={p}); use boss_path instead"
        )
    limit = min(p, data.n - 1)
    if k_max is None:
        k_max = limit
    elif k_max > p:
        raise ValueError(f"k_max={k_max} exceeds p={p}")
    elif k_max > limit:
        logger.warning("k_max=%d reduced to n - 1 = %d", k_max, limit)
        k_max = limit

    c = center(data)
    G = c.Xc.T @ c.Xc
    xty = c.Xc.T @ c.yc
    tss = float(c.yc @ c.yc)
    tie_tol = 1e-12 * max(tss, np.finfo(float).tiny)

    best_rss = np.full(k_max + 1, np.inf)
    best_rss[0] = tss
    best_sets: List[Tuple[int, ...]] = [()] * (k_max + 1)

    def visit(
        start: int, subset: Tuple[int, ...], R: np.ndarray, w: np.ndarray, rss: float
    ) -> None:
        k = len(subset)
        for j in range(start, p):
            if G[j, j] == 0.0:
                continue
            if k:
                r = scipy.linalg.solve_triangular(R, G[subset, j], trans="T")
            else:
                r = np.zeros(0)
            d2 = G[j, j] - r @ r
            if d2 <= _GRAM_REFINE * G[j, j]:
                d2 = _residual_sq(c.Xc, subset, R, r, j)
            if d2 <= EPS_RANK**2 * G[j, j]:
                continue
            d = np.sqrt(d2)
            wj = (xty[j] - r @ w) / d
            new_rss = rss - wj * wj
            new_subset = subset + (j,)
            if new_rss < best_rss[k + 1] - tie_tol:
                best_rss[k + 1] = new_rss
                best_sets[k + 1] = new_subset
            if k + 1 < k_max:
                R_new = np.zeros((k + 1, k + 1))
                R_new[:k, :k] = R
                R_new[:k, k] = r
                R_new[k, k] = d
                visit(j + 1, new_subset, R_new, np.append(w, wj), new_rss)

    if k_max > 0:
        visit(0, (), np.zeros((0, 0)), np.zeros(0), tss)

    sizes = [k for k in range(k_max + 1) if np.isfinite(best_rss[k])]
    # Sizes are contiguous: any admissible subset has admissible prefixes.
    K = sizes[-1]
    coefs = np.zeros((p, K + 1))
    rss = np.empty(K + 1)
    rss[0] = tss
    for k in range(1, K + 1):
        support = list(best_sets[k])
        coefs[support, k], rss[k] = ols(c.Xc[:, support], c.yc)

    return SolutionPath(
        method="BS",
        coefs=coefs,
        intercepts=c.ybar - c.xbar @ coefs,
        supports=tuple(best_sets[: K + 1]),
        rss=rss,
        n=data.n,
        metadata=MappingProxyType({"rank": K, "truncated": K < k_max}),
    )


def lbs_path(
    z: np.ndarray,
    lambdas: Iterable[float],
    tss: Optional[float] = None,
    n: Optional[int] = None,
) -> SolutionPath:
    """
    Lagrangian best subset on an orthonormal basis: hard thresholding of z at
    sqrt(2 lambda), one column per lambda.

    Coefficients are in the basis coordinates.  RSS is measured against `tss`
    (the total sum of squares of the centered response), which defaults to
    |z|^2, i.e. the part of y inside the basis span.
    """
    z = np.asarray(z, dtype=float)
    lambdas = np.asarray(list(lambdas), dtype=float)
    if np.any(lambdas < 0):
        raise ValueError("lambdas must be nonnegative")
    if np.any(np.diff(lambdas) > 0):
        raise ValueError("lambdas must be non-increasing")

    keep = (z**2)[:, None] >= 2.0 * lambdas[None, :]
    coefs = z[:, None] * keep
    if tss is None:
        tss = float(z @ z)
    return SolutionPath(
        method="LBS",
        coefs=coefs,
        intercepts=np.zeros(len(lambdas)),
        supports=tuple(
            tuple(int(i) for i in np.flatnonzero(keep[:, j]))
            for j in range(len(lambdas))
        ),
        rss=tss - (z**2) @ keep,
        n=len(z) if n is None else n,
        z=z,
        lambdas=lambdas,
    )


def lambda_grid(
    z_reps: Iterable[np.ndarray], m: int = 200, alpha: float = 0.001
) -> np.ndarray:
    """
    Decreasing, log-equispaced grid from lambda_max down to alpha * lambda_max,
    where lambda_max = max over replications of max z_i^2 / 2.
    """
    if m < 2:
        raise ValueError(f"Need at least 2 grid points, got {m}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    lam_max = 0.0
    for z in z_reps:
        z = np.asarray(z, dtype=float)
        if z.size:
            lam_max = max(lam_max, float(np.max(z**2)) / 2.0)
    if lam_max == 0.0:
        raise DegenerateGrid("Every z is zero; no lambda grid to build")
    return np.geomspace(lam_max, alpha * lam_max, m)


def increment_decomposition_gap(
    path: SolutionPath, data: Dataset, k_Q: int
) -> float:
    """
    Rebuilds column `k_Q` of a BOSS or FS path as
    sum_{j in S} (alpha_j - alpha_{j-1}), alpha_j being the zero-padded LS
    coefficients on the first j ordered columns, and returns the max-norm
    difference from the path's coefficients.
    """
    if path.method not in ("BOSS", "FS") or path.z is None:
        raise NotApplicable(f"No orthogonal decomposition for {path.method} paths")
    if path.metadata.get("truncated"):
        raise NotApplicable("Path was truncated by rank deficiency")
    K = len(path.order)
    if not 0 <= k_Q <= K:
        raise ValueError(f"k_Q={k_Q} outside [0, {K}]")

    c = center(data)
    ordered = c.Xc[:, list(path.order)]
    alphas = np.zeros((K + 1, K))
    for j in range(1, K + 1):
        alphas[j, :j], _ = ols(ordered[:, :j], c.yc)

    kept = np.flatnonzero(_kept_mask(path.method, path.z)[:, k_Q])
    beta = np.zeros(K)
    for i in kept:
        beta += alphas[i + 1] - alphas[i]

    full = np.zeros(data.p)
    full[list(path.order)] = beta
    return float(np.max(np.abs(full - path.coefs[:, k_Q]), initial=0.0))
