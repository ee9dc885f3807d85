"""
Choosing one model from a path: information criteria with an estimated noise
level, or K-fold cross-validation.
"""

from __future__ import annotations

import dataclasses
import logging
import math
from typing import Callable, Optional, Tuple

import numpy as np

from .criteria import CRITERIA, criterion_trace
from .dof import bdf_bootstrap, hdf_profile, ndf_profile, path_rule
from .lasso import lasso_cd
from .linalg import center
from .parallel import ordered_map, rep_rng, STREAM_FOLDS
from .paths import boss_path, bs_exhaustive, fs_path, MAX_EXHAUSTIVE_P, orthogonalize
from .types import (
    ConfigError,
    CriterionTrace,
    Dataset,
    DfProfile,
    NoiseEstimate,
    QRState,
    SelectionResult,
    SolutionPath,
)

logger = logging.getLogger(__name__)

METHODS = ("boss", "fs", "bs", "lasso")
DF_SOURCES = ("hdf", "ndf", "edf", "bdf")

# RSS below this share of the total sum of squares counts as an exact fit.
_DEGENERATE_RSS = 1e-24

PathBuilder = Callable[[Dataset], SolutionPath]


class NoiseEstimationError(ArithmeticError):
    pass


class DegenerateNoise(NoiseEstimationError):
    pass


class SelectionError(RuntimeError):
    pass


class FoldSizeError(ValueError):
    pass


def parse_selector(selector: str) -> Tuple[str, Optional[str]]:
    """
    "aicc-hdf" -> ("aicc", "hdf"); "cv" -> ("cv", None); "errkl" -> ("errkl", None).
    """
    s = selector.strip().lower()
    if s in ("cv", "errkl"):
        return s, None
    criterion, sep, source = s.partition("-")
    if not sep or criterion not in CRITERIA or source not in DF_SOURCES:
        raise ConfigError(
            f"Unknown selector {selector!r}; use <{'|'.join(CRITERIA)}>-"
            f"<{'|'.join(DF_SOURCES)}>, cv or errkl"
        )
    return criterion, source


def _orthogonal_bs(data: Dataset) -> SolutionPath:
    return dataclasses.replace(boss_path(data), method="BS")


def path_builder(method: str, orthogonal: bool = False) -> PathBuilder:
    """
    The path procedure for `method`.  With `orthogonal`, best subset is read off
    the orthogonalized path, which is exact when X has orthonormal centered
    columns.
    """
    method = method.lower()
    if method == "boss":
        return boss_path
    if method == "fs":
        return fs_path
    if method == "bs":
        return _orthogonal_bs if orthogonal else bs_exhaustive
    if method == "lasso":
        return lasso_cd
    raise ConfigError(f"Unknown method {method!r}; choose from {METHODS}")


def _fold_builder(method: str, orthogonal: bool, full: SolutionPath) -> PathBuilder:
    method = method.lower()
    if method == "lasso":
        lambdas = full.lambdas

        def lasso_on_grid(d: Dataset) -> SolutionPath:
            return lasso_cd(d, lambdas=lambdas)

        return lasso_on_grid
    if method == "bs" and orthogonal:
        # Folds are no longer orthogonal.
        def bs_fold(d: Dataset) -> SolutionPath:
            if d.p <= MAX_EXHAUSTIVE_P:
                return bs_exhaustive(d)
            return _orthogonal_bs(d)

        return bs_fold
    return path_builder(method, orthogonal)


def assign_folds(n: int, folds: int, seed: int) -> np.ndarray:
    """
    Fold id of every row: a seeded shuffle dealt round-robin, so fold sizes
    differ by at most one.
    """
    if folds < 2:
        raise ValueError(f"Need at least 2 folds, got {folds}")
    if n < folds:
        raise FoldSizeError(f"{n} rows cannot fill {folds} folds")
    if n - math.ceil(n / folds) < 2:
        raise FoldSizeError(
            f"Training parts of {n} rows in {folds} folds are too small to center"
        )
    ids = np.empty(n, dtype=int)
    ids[rep_rng(seed, STREAM_FOLDS).permutation(n)] = np.arange(n) % folds
    return ids


def _result(
    path: SolutionPath,
    k: int,
    trace: CriterionTrace,
    noise: Optional[NoiseEstimate] = None,
    df_profile: Optional[DfProfile] = None,
) -> SelectionResult:
    return SelectionResult(
        k_selected=k,
        coefficients=np.array(path.coefs[:, k]),
        intercept=float(path.intercepts[k]),
        trace=trace,
        noise=noise,
        df_profile=df_profile,
        path=path,
    )


def kfold_cv(
    method: str,
    data: Dataset,
    folds: int = 10,
    seed: int = 42,
    threads: Optional[int] = None,
    orthogonal: bool = False,
) -> SelectionResult:
    """
    K-fold CV over the columns of `method`'s path.  Each fold refits the path on
    its training rows; the column with the least total held-out squared error
    (smallest index on ties) is taken from the full-data path.
    """
    full = path_builder(method, orthogonal)(data)
    ids = assign_folds(data.n, folds, seed)
    build = _fold_builder(method, orthogonal, full)

    def fold_error(f: int) -> np.ndarray:
        train = data.subset_rows(ids != f)
        test = data.subset_rows(ids == f)
        pred = build(train).predict(test.X)
        return np.sum((test.y[:, None] - pred) ** 2, axis=0)

    errors = ordered_map(fold_error, range(folds), threads)
    m = min([full.size] + [len(e) for e in errors])
    if m < full.size:
        logger.info("CV compares the first %d of %d path columns", m, full.size)
    total = np.zeros(m)
    for e in errors:
        total += e[:m]
    trace = CriterionTrace.from_values("CV", None, total)
    return _result(full, trace.argmin, trace)


def lasso_cv(
    data: Dataset, folds: int = 10, seed: int = 42, threads: Optional[int] = None
) -> SelectionResult:
    return kfold_cv("lasso", data, folds, seed, threads)


def estimate_noise(
    data: Dataset,
    q_basis: Optional[QRState] = None,
    folds: int = 10,
    seed: int = 42,
    threads: Optional[int] = None,
) -> NoiseEstimate:
    """
    Mean and noise level for the df and Cp computations.

    With n > p + 1 this is the full least-squares fit, sigma^2 = RSS / (n - K - 1)
    for a basis of rank K.  Otherwise the mean is the 10-fold-CV lasso fit and
    sigma^2 = RSS / (n - nnz - 1).
    """
    n = data.n
    c = center(data)
    tss = float(c.yc @ c.yc)
    if n - data.p - 1 > 0:
        if q_basis is None:
            _, q_basis = orthogonalize(data)
        z = q_basis.Q.T @ c.yc
        fit = q_basis.Q @ z
        rss = float(np.sum((c.yc - fit) ** 2))
        dof = n - q_basis.k - 1
        mu_hat = c.ybar + fit
        source = "full-ols"
    else:
        logger.info(
            "n=%d <= p+1=%d: estimating noise from a CV lasso fit", n, data.p + 1
        )
        lasso = lasso_cv(data, folds, seed, threads)
        mu_hat = lasso.predict(data.X)
        rss = float(np.sum((data.y - mu_hat) ** 2))
        dof = n - len(lasso.support) - 1
        source = "lasso-reid"
        if dof <= 0:
            raise NoiseEstimationError(
                f"Lasso fit uses {len(lasso.support)} predictors; "
                f"no residual degrees of freedom left in n={n}"
            )
    if rss <= _DEGENERATE_RSS * tss or tss == 0.0:
        raise DegenerateNoise(f"Residual sum of squares is {rss:.3g}; sigma_hat is 0")
    return NoiseEstimate(mu_hat, math.sqrt(rss / dof), source)


def select_ic(
    path: SolutionPath,
    criterion: str,
    df_profile: DfProfile,
    noise: Optional[NoiseEstimate] = None,
) -> SelectionResult:
    """
    Minimizes `criterion` over the path with df(k) + 1 (the intercept) from
    `df_profile`.
    """
    values = np.asarray(df_profile.values, dtype=float)
    if len(values) != path.size:
        raise ValueError(
            f"df profile has {len(values)} entries, path has {path.size} columns"
        )
    sigma2 = None
    if criterion.lower() == "cp":
        if noise is None:
            raise ValueError("Cp needs a noise estimate")
        sigma2 = noise.sigma_hat**2
    trace = criterion_trace(
        criterion, path.rss, values + 1.0, path.n, sigma2, df_profile.method
    )
    if trace.argmin < 0:
        raise SelectionError(
            f"No admissible model for {trace.criterion}-{df_profile.method}: "
            "every value is infinite"
        )
    return _result(path, trace.argmin, trace, noise, df_profile)


def df_profile_for(
    path: SolutionPath,
    df_source: str,
    data: Dataset,
    noise: Optional[NoiseEstimate],
    builder: Optional[PathBuilder] = None,
    bdf_reps: int = 100,
    seed: int = 42,
    threads: Optional[int] = None,
) -> DfProfile:
    """
    The df profile a selector asks for.  hdf needs an orthogonalized path; bdf
    refits `builder` on bootstrap responses; edf needs the true mean and is only
    available in simulations.
    """
    if df_source == "ndf":
        return ndf_profile(path)
    if df_source == "hdf":
        basis = path.metadata.get("basis")
        if basis is None or path.method == "FS":
            raise ConfigError(f"hdf is not defined for {path.method} paths")
        assert noise is not None
        xtmu = basis.Q.T @ (noise.mu_hat - noise.mu_hat.mean())
        return hdf_profile(xtmu, noise.sigma_hat, noise.mu_hat)
    if df_source == "bdf":
        if builder is None or path.method == "LASSO":
            raise ConfigError(f"bdf is not available for {path.method} paths")
        assert noise is not None
        return bdf_bootstrap(
            path_rule(builder),
            data,
            noise.mu_hat,
            noise.sigma_hat,
            bdf_reps,
            seed,
            threads,
        )
    raise ConfigError(f"{df_source} needs the true mean; use it in simulations")


def select_subset(
    data: Dataset,
    method: str = "boss",
    selector: str = "aicc-hdf",
    folds: int = 10,
    seed: int = 42,
    threads: Optional[int] = None,
    bdf_reps: int = 100,
    orthogonal: bool = False,
) -> SelectionResult:
    """
    Builds `method`'s path on `data` and picks a model with `selector`.

    When the noise estimate is degenerate (y fitted exactly) the selection falls
    back to cross-validation.
    """
    criterion, df_source = parse_selector(selector)
    if criterion == "cv":
        return kfold_cv(method, data, folds, seed, threads, orthogonal)
    if criterion == "errkl" or df_source is None:
        raise ConfigError("errkl needs the true mean; use it in simulations")
    if method.lower() == "lasso" and df_source != "ndf":
        raise ConfigError("The lasso uses ndf (nonzero coefficients); try aicc-ndf")

    builder = path_builder(method, orthogonal)
    path = builder(data)
    noise = None
    if df_source in ("hdf", "bdf") or criterion == "cp":
        try:
            basis = path.metadata.get("basis")
            noise = estimate_noise(data, basis, folds, seed, threads)
        except DegenerateNoise as e:
            logger.warning("%s; falling back to %d-fold CV", e, folds)
            return kfold_cv(method, data, folds, seed, threads, orthogonal)
    profile = df_profile_for(
        path, df_source, data, noise, builder, bdf_reps, seed, threads
    )
    return select_ic(path, criterion, profile, noise)
