"""
Simulation studies for subset selection: data-generating designs, noise
calibration by signal-to-noise ratio, the replication engine with its summary
metrics, the BS versus Lagrangian BS comparison and leave-one-out testing on
real data.
"""

from __future__ import annotations

import dataclasses
import logging
import math
import time
from collections import Counter
from types import MappingProxyType
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .criteria import criterion_trace, err_kl_estimate
from .dof import (
    bdf_bootstrap,
    df_lagrangian,
    edf_monte_carlo,
    FittingRule,
    hdf_profile,
    ndf_profile,
    orthogonal_bs_fits,
    path_rule,
)
from .linalg import center
from .parallel import (
    derive_seed,
    ordered_map,
    rep_rng,
    STREAM_BOOTSTRAP,
    STREAM_DESIGN,
    STREAM_EDF,
    STREAM_FOLDS,
    STREAM_NOISE,
)
from .paths import lambda_grid, lbs_path, MAX_EXHAUSTIVE_P
from .selection import (
    DegenerateNoise,
    df_profile_for,
    estimate_noise,
    FoldSizeError,
    kfold_cv,
    METHODS,
    parse_selector,
    path_builder,
    select_ic,
    select_subset,
    SelectionError,
)
from .types import (
    ConfigError,
    CriterionTrace,
    Dataset,
    DfProfile,
    InvalidData,
    LbsComparison,
    LooReport,
    LooSummary,
    MethodSummary,
    NoiseEstimate,
    SelectionResult,
    SimConfig,
    SimReport,
    SolutionPath,
    TrueModel,
)

logger = logging.getLogger(__name__)

# Number of signal predictors in every sparse design.
P0 = 6
DENSE_DECAY = 10.0

# (RMSE, support) of one selected fit
_Pick = Tuple[float, Tuple[int, ...]]


class CovarianceError(ValueError):
    pass


class UndefinedSnr(ValueError):
    pass


def gen_orthogonal_trig(n: int, p: int) -> np.ndarray:
    """
    Fixed design of p/2 sine columns followed by p/2 cosine columns at the
    frequencies 1..p/2, each scaled to unit norm.  The columns are centered and
    mutually orthogonal when p < n.
    """
    if p % 2:
        raise ConfigError(f"The trigonometric design needs an even p, got {p}")
    if not 0 < p < n:
        raise ConfigError(f"The trigonometric design needs 0 < p < n, got n={n}, p={p}")
    angles = 2.0 * np.pi * np.outer(np.arange(n), np.arange(1, p // 2 + 1)) / n
    X = np.hstack([np.sin(angles), np.cos(angles)])
    return X / np.linalg.norm(X, axis=0)


def design_beta(design: str, p: int) -> np.ndarray:
    if p < P0:
        raise ConfigError(f"Design {design} needs p >= {P0}, got {p}")
    beta = np.zeros(p)
    if design in ("orth-sparse-ex1", "sparse-ex3"):
        beta[:P0] = 1.0
    elif design in ("orth-sparse-ex2", "sparse-ex4"):
        beta[:P0] = [1.0, -1.0, 5.0, -5.0, 10.0, -10.0]
    elif design == "sparse-ex2":
        beta[:P0] = [1.0, -1.0, 1.0, -1.0, 1.0, -1.0]
    elif design == "sparse-ex1":
        beta[np.round(np.linspace(0, p - 1, P0)).astype(int)] = 1.0
    elif design in ("orth-dense", "dense"):
        j = np.arange(1, p + 1)
        beta = (-1.0) ** j * np.exp(-j / DENSE_DECAY)
    else:
        raise ConfigError(f"Unknown design {design!r}")
    return beta


def design_covariance(design: str, p: int, rho: float) -> np.ndarray:
    if design in ("sparse-ex1", "dense"):
        idx = np.arange(p)
        return rho ** np.abs(idx[:, None] - idx[None, :])
    Sigma = np.eye(p)
    if design in ("sparse-ex2", "sparse-ex4"):
        # signal columns come in pairs (0, 1), (2, 3), (4, 5) with opposite betas
        for i in range(0, min(P0, p) - 1, 2):
            Sigma[i, i + 1] = Sigma[i + 1, i] = rho
    elif design == "sparse-ex3":
        if p < 2 * P0:
            raise ConfigError(f"Design {design} needs p >= {2 * P0}, got {p}")
        for i in range(P0):
            Sigma[i, P0 + i] = Sigma[P0 + i, i] = rho
    else:
        raise ConfigError(f"{design!r} has no random-design covariance")
    return Sigma


def gen_general(
    design: str, n: int, p: int, rho: float, seed: int
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Random design with rows drawn i.i.d. from N(0, Sigma), and its beta.
    """
    Sigma = design_covariance(design, p, rho)
    try:
        L = np.linalg.cholesky(Sigma)
    except np.linalg.LinAlgError:
        raise CovarianceError(
            f"Covariance of {design} with rho={rho} is not positive definite"
        )
    Z = rep_rng(seed, STREAM_DESIGN).standard_normal((n, p))
    return Z @ L.T, design_beta(design, p)


def calibrate_sigma(
    beta: np.ndarray,
    Sigma: Optional[np.ndarray],
    snr: float,
    X: Optional[np.ndarray] = None,
) -> float:
    """
    sigma = sqrt(Var(x'beta) / snr), where Var(x'beta) is beta' Sigma beta, or
    |X beta|^2 / n for a fixed design passed as `X` with Sigma None.
    """
    if not snr > 0:
        raise ValueError(f"snr must be positive, got {snr}")
    beta = np.asarray(beta, dtype=float)
    if Sigma is not None:
        signal = float(beta @ Sigma @ beta)
    elif X is not None:
        signal = float(np.sum((X @ beta) ** 2)) / X.shape[0]
    else:
        raise ValueError("Need either Sigma or a fixed design X")
    if not signal > 0:
        raise UndefinedSnr("beta carries no signal; the SNR is undefined")
    return math.sqrt(signal / snr)


def make_true_model(config: SimConfig) -> Tuple[np.ndarray, TrueModel]:
    if config.orthogonal:
        X = gen_orthogonal_trig(config.n, config.p)
        beta = design_beta(config.design, config.p)
        sigma = calibrate_sigma(beta, None, config.snr_value, X=X)
        Sigma = None
    else:
        X, beta = gen_general(
            config.design, config.n, config.p, config.rho, config.seed
        )
        Sigma = design_covariance(config.design, config.p, config.rho)
        sigma = calibrate_sigma(beta, Sigma, config.snr_value)
    return X, TrueModel(beta, X @ beta, sigma, config.snr_value, Sigma)


def draw_response(model: TrueModel, seed: int, rep: int) -> np.ndarray:
    """
    mu + eps for replication `rep`, with eps shifted to mean zero.
    """
    n = len(model.mu)
    eps = model.sigma * rep_rng(seed, STREAM_NOISE, rep).standard_normal(n)
    return model.mu + (eps - eps.mean())


def rmse(fitted: np.ndarray, mu: np.ndarray) -> np.ndarray:
    """
    sqrt(|fitted - mu|^2 / n), per column when `fitted` is a matrix.
    """
    fitted = np.asarray(fitted, dtype=float)
    diff = fitted - (mu[:, None] if fitted.ndim == 2 else mu)
    return np.sqrt(np.mean(diff**2, axis=0))


def _incompatible(
    method: str, criterion: str, df_source: Optional[str], orthogonal: bool
) -> Optional[str]:
    if method == "lasso" and df_source not in (None, "ndf"):
        return "the lasso supports ndf only"
    if df_source == "hdf" and not (method == "boss" or (method == "bs" and orthogonal)):
        return "hdf needs an orthogonalized best-subset path"
    return None


def plan_pairs(
    config: SimConfig,
) -> Tuple[List[Tuple[str, str, str, Optional[str]]], List[str]]:
    """
    The (method, selector, criterion, df source) pairs an experiment runs, and
    notices for the ones it skips.
    """
    pairs = []
    skipped = []
    for method in config.methods:
        m = method.lower()
        if m not in METHODS:
            raise ConfigError(f"Unknown method {method!r}; choose from {METHODS}")
        if m == "bs" and not config.orthogonal and config.p > MAX_EXHAUSTIVE_P:
            skipped.append(
                f"{m}: exhaustive best subset is limited to p <= {MAX_EXHAUSTIVE_P}"
            )
            continue
        for selector in config.selectors:
            criterion, df_source = parse_selector(selector)
            reason = _incompatible(m, criterion, df_source, config.orthogonal)
            if reason:
                skipped.append(f"{m}/{selector}: {reason}")
                continue
            pairs.append((m, selector.lower(), criterion, df_source))
    for notice in skipped:
        logger.warning("Skipping %s", notice)
    return pairs, skipped


def _edf_rule(method: str, orthogonal: bool) -> FittingRule:
    if orthogonal and method in ("bs", "boss"):
        return orthogonal_bs_fits
    return path_rule(path_builder(method, orthogonal))


def _null_result(path: SolutionPath, trace_label: str) -> SelectionResult:
    return SelectionResult(
        0,
        np.array(path.coefs[:, 0]),
        float(path.intercepts[0]),
        CriterionTrace(trace_label, None, np.zeros(0), 0),
        path=path,
    )


class _Replication:
    """
    Everything one replication of an experiment computes, keyed by label.
    """

    def __init__(self) -> None:
        self.rmse: Dict[str, float] = {}
        self.support: Dict[str, Tuple[int, ...]] = {}
        self.runtime: Dict[str, float] = {}
        self.path_rmse: Dict[str, np.ndarray] = {}
        self.oracle = math.nan
        self.fallbacks: List[str] = []


def run_experiment(config: SimConfig) -> SimReport:
    """
    Fixes X and the true mean, then for every replication draws a response,
    fits each method's path, selects with each selector and measures the
    RMSE of the selected fit against the true mean.
    """
    X, model = make_true_model(config)
    n, p = X.shape
    mu, sigma = model.mu, model.sigma
    pairs, skipped = plan_pairs(config)
    baseline = config.baseline_method
    if baseline == "bs" and not config.orthogonal and p > MAX_EXHAUSTIVE_P:
        raise ConfigError(f"Baseline bs needs p <= {MAX_EXHAUSTIVE_P}, got {p}")
    methods = list(dict.fromkeys([m for m, *_ in pairs] + [baseline, "fs"]))
    builders = {m: path_builder(m, config.orthogonal) for m in methods}
    full_k = min(n - 1, p, n - 2)
    flags = []
    if full_k < p:
        flags.append(
            f"full-ols uses the first {full_k} ordered predictors "
            f"(p={p} >= n-1={n - 1})"
        )

    edf: Dict[str, DfProfile] = {}
    for m in dict.fromkeys(m for m, _, _, src in pairs if src == "edf"):
        logger.info("Estimating edf for %s", m)
        edf[m] = edf_monte_carlo(
            _edf_rule(m, config.orthogonal),
            X,
            mu,
            sigma,
            reps=config.edf_reps or config.reps,
            seed=derive_seed(config.seed, STREAM_EDF),
            threads=config.threads,
        )
    known = NoiseEstimate(mu, sigma, "known")
    needs_noise = not config.known_noise and any(
        src in ("hdf", "bdf") or (crit == "cp" and src != "edf")
        for _, _, crit, src in pairs
    )

    def one(r: int) -> _Replication:
        out = _Replication()
        data = Dataset(X, draw_response(model, config.seed, r))
        fold_seed = derive_seed(config.seed, STREAM_FOLDS, r)
        paths = {m: builders[m](data) for m in methods}
        for m, path in paths.items():
            out.path_rmse[m] = rmse(path.predict(X), mu)
        out.oracle = float(np.min(out.path_rmse[baseline]))
        ybar = float(np.mean(data.y))
        out.rmse["null"] = float(rmse(np.full(n, ybar), mu))
        out.support["null"] = ()
        k_full = min(full_k, paths["fs"].size - 1)
        out.rmse["full-ols"] = float(out.path_rmse["fs"][k_full])
        out.support["full-ols"] = paths["fs"].nonzero(k_full)

        noise: Optional[NoiseEstimate] = known if config.known_noise else None
        if needs_noise:
            basis = paths["boss"].metadata.get("basis") if "boss" in paths else None
            try:
                noise = estimate_noise(data, basis, config.folds, fold_seed, 1)
            except DegenerateNoise as e:
                logger.warning("Replication %d: %s", r, e)

        for m, selector, criterion, df_source in pairs:
            label = f"{m}/{selector}"
            path = paths[m]
            start = time.perf_counter()
            result = _select_one(
                config, data, path, m, criterion, df_source, noise, known, edf, r
            )
            if result is None:
                out.fallbacks.append(label)
                result = kfold_cv(
                    m, data, config.folds, fold_seed, 1, config.orthogonal
                )
            out.runtime[label] = time.perf_counter() - start
            out.rmse[label] = float(rmse(result.predict(X), mu))
            out.support[label] = result.support
        return out

    logger.info(
        "Running %d replications of %s (n=%d, p=%d, snr=%s)",
        config.reps,
        config.design,
        n,
        p,
        config.snr,
    )
    reps = ordered_map(one, range(config.reps), config.threads)

    oracle = float(np.mean([rep.oracle for rep in reps]))
    labels = [f"{m}/{s}" for m, s, _, _ in pairs] + ["null", "full-ols"]
    means = {
        label: float(np.mean([rep.rmse[label] for rep in reps])) for label in labels
    }
    best = min(means.values())
    truth = set(model.support)
    summaries = []
    for label in labels:
        values = np.array([rep.rmse[label] for rep in reps])
        supports = [rep.support[label] for rep in reps]
        summaries.append(
            MethodSummary(
                label=label,
                mean_rmse=means[label],
                se_rmse=_std_error(values),
                pct_worse=_pct_worse(means[label], oracle),
                relative_efficiency=best / means[label] if means[label] > 0 else 1.0,
                sparsistency=float(np.mean([len(truth & set(s)) for s in supports])),
                extra_variables=float(np.mean([len(set(s) - truth) for s in supports])),
                mean_size=float(np.mean([len(s) for s in supports])),
                runtime=(
                    float(np.mean([rep.runtime[label] for rep in reps]))
                    if config.record_runtime and label in reps[0].runtime
                    else None
                ),
            )
        )

    fallbacks = Counter(label for rep in reps for label in rep.fallbacks)
    for label, count in sorted(fallbacks.items()):
        flags.append(f"{label}: fell back to CV in {count} replications")

    path_rmse = {}
    for m in methods:
        width = min(len(rep.path_rmse[m]) for rep in reps)
        path_rmse[m] = tuple(
            float(v)
            for v in np.mean([rep.path_rmse[m][:width] for rep in reps], axis=0)
        )
    return SimReport(
        config=config,
        sigma=sigma,
        oracle_rmse=oracle,
        summaries=tuple(summaries),
        path_rmse=MappingProxyType(path_rmse),
        selected_sizes=MappingProxyType(
            {
                label: tuple(len(rep.support[label]) for rep in reps)
                for label in labels[:-2]
            }
        ),
        skipped=tuple(skipped),
        flags=tuple(flags),
    )


def _select_one(
    config: SimConfig,
    data: Dataset,
    path: SolutionPath,
    method: str,
    criterion: str,
    df_source: Optional[str],
    noise: Optional[NoiseEstimate],
    known: NoiseEstimate,
    edf: Mapping[str, DfProfile],
    r: int,
) -> Optional[SelectionResult]:
    """
    One selector on one replication; None asks the caller to fall back to CV.
    """
    if criterion == "cv":
        return kfold_cv(
            method,
            data,
            config.folds,
            derive_seed(config.seed, STREAM_FOLDS, r),
            1,
            config.orthogonal,
        )
    if criterion == "errkl":
        trace = err_kl_estimate(
            path.predict(data.X), path.rss, known.mu_hat, known.sigma_hat
        )
        if trace.argmin < 0:
            return _null_result(path, "ErrKL")
        return SelectionResult(
            trace.argmin,
            np.array(path.coefs[:, trace.argmin]),
            float(path.intercepts[trace.argmin]),
            trace,
            path=path,
        )
    assert df_source is not None
    if df_source == "edf":
        profile, used = edf[method], known
    else:
        if noise is None and (df_source in ("hdf", "bdf") or criterion == "cp"):
            return None
        used = noise
        profile = df_profile_for(
            path,
            df_source,
            data,
            used,
            path_builder(method, config.orthogonal),
            config.bdf_reps,
            derive_seed(config.seed, STREAM_BOOTSTRAP, r),
            1,
        )
    try:
        return select_ic(path, criterion, profile, used)
    except SelectionError as e:
        logger.warning("Replication %d: %s; using the null model", r, e)
        return _null_result(path, criterion)


def _std_error(values: np.ndarray) -> float:
    if len(values) < 2:
        return 0.0
    return float(np.std(values, ddof=1) / math.sqrt(len(values)))


def _pct_worse(mean_rmse: float, oracle: float) -> float:
    if oracle == 0.0:
        return 0.0 if mean_rmse == 0.0 else math.inf
    return 100.0 * (mean_rmse / oracle - 1.0)


def run_grid(
    base: SimConfig,
    ns: Sequence[int],
    ps: Sequence[int],
    snrs: Sequence[str],
) -> List[SimReport]:
    """
    One experiment per (n, snr, p), in that nesting order.
    """
    reports = []
    for n in ns:
        for snr in snrs:
            for p in ps:
                config = dataclasses.replace(base, n=int(n), p=int(p), snr=str(snr))
                reports.append(run_experiment(config))
    return reports


def compare_lbs(
    config: SimConfig, n_lambda: int = 200, alpha: float = 0.001
) -> LbsComparison:
    """
    Best subset against its Lagrangian form under an orthogonal design, both
    selected by Cp with the true sigma: BS with Monte-Carlo df per subset size,
    LBS with the analytic df_L on a lambda grid shared by all replications.
    """
    if not config.orthogonal:
        raise ConfigError(
            f"The LBS comparison needs an orthogonal design, got {config.design}"
        )
    X, model = make_true_model(config)
    n = X.shape[0]
    mu, sigma = model.mu, model.sigma
    known = NoiseEstimate(mu, sigma, "known")

    def z_of(r: int) -> np.ndarray:
        y = draw_response(model, config.seed, r)
        return X.T @ (y - y.mean())

    lambdas = lambda_grid(
        ordered_map(z_of, range(config.reps), config.threads), n_lambda, alpha
    )
    xtmu = X.T @ (mu - mu.mean())
    df_l = np.array([df_lagrangian(float(lam), xtmu, sigma) for lam in lambdas])
    edf = edf_monte_carlo(
        orthogonal_bs_fits,
        X,
        mu,
        sigma,
        reps=config.edf_reps or config.reps,
        seed=derive_seed(config.seed, STREAM_EDF),
        threads=config.threads,
    )
    bs_builder = path_builder("bs", orthogonal=True)

    def one(r: int) -> Tuple[_Pick, _Pick, float]:
        data = Dataset(X, draw_response(model, config.seed, r))
        bs = select_ic(bs_builder(data), "cp", edf, known)
        assert bs.path is not None
        oracle = float(np.min(rmse(bs.path.predict(X), mu)))

        c = center(data)
        lbs = lbs_path(X.T @ c.yc, lambdas, tss=float(c.yc @ c.yc), n=n)
        trace = criterion_trace("cp", lbs.rss, df_l + 1.0, n, sigma**2, "edf")
        k = trace.argmin
        lbs_fit = c.ybar + X @ lbs.coefs[:, k]
        return (
            (float(rmse(bs.predict(X), mu)), bs.support),
            (float(rmse(lbs_fit, mu)), lbs.supports[k]),
            oracle,
        )

    reps = ordered_map(one, range(config.reps), config.threads)
    oracle = float(np.mean([rep[2] for rep in reps]))
    truth = set(model.support)
    labels = ("bs/cp-edf", "lbs/cp-edf")
    means = [float(np.mean([rep[i][0] for rep in reps])) for i in range(2)]
    best = min(means)
    summaries = []
    size_counts = {}
    for i, label in enumerate(labels):
        supports = [rep[i][1] for rep in reps]
        summaries.append(
            MethodSummary(
                label=label,
                mean_rmse=means[i],
                se_rmse=_std_error(np.array([rep[i][0] for rep in reps])),
                pct_worse=_pct_worse(means[i], oracle),
                relative_efficiency=best / means[i] if means[i] > 0 else 1.0,
                sparsistency=float(np.mean([len(truth & set(s)) for s in supports])),
                extra_variables=float(np.mean([len(set(s) - truth) for s in supports])),
                mean_size=float(np.mean([len(s) for s in supports])),
            )
        )
        size_counts[label] = MappingProxyType(
            dict(sorted(Counter(len(s) for s in supports).items()))
        )
    diffs = [len(rep[1][1]) - len(rep[0][1]) for rep in reps]
    return LbsComparison(
        config=config,
        sigma=sigma,
        lambdas=lambdas,
        summaries=tuple(summaries),
        size_counts=MappingProxyType(size_counts),
        diff_counts=MappingProxyType(dict(sorted(Counter(diffs).items()))),
        more_fraction=float(np.mean([d > 0 for d in diffs])),
        fewer_fraction=float(np.mean([d < 0 for d in diffs])),
    )


def loo_real_data(
    data: Dataset,
    methods: Sequence[str] = ("boss",),
    selectors: Sequence[str] = ("aicc-hdf",),
    folds: int = 10,
    seed: int = 42,
    threads: Optional[int] = None,
) -> LooReport:
    """
    Leave-one-out prediction error: every (method, selector) is fitted, with an
    intercept, on all rows but one and predicts the held-out row.
    """
    n, p = data.n, data.p
    if n < 3:
        raise InvalidData(f"Leave-one-out needs n >= 3, got {n}")
    pairs = []
    unavailable = []
    for method in methods:
        m = method.lower()
        if m not in METHODS:
            raise ConfigError(f"Unknown method {method!r}; choose from {METHODS}")
        for selector in selectors:
            criterion, df_source = parse_selector(selector)
            label = f"{m}/{selector.lower()}"
            reason = _incompatible(m, criterion, df_source, orthogonal=False)
            if m == "bs" and p > MAX_EXHAUSTIVE_P:
                reason = f"exhaustive best subset is limited to p <= {MAX_EXHAUSTIVE_P}"
            elif criterion == "errkl" or df_source == "edf":
                reason = f"{selector} needs the true mean"
            if reason:
                logger.warning("Skipping %s: %s", label, reason)
                unavailable.append(f"{label}: {reason}")
                continue
            pairs.append((m, selector, label))

    def one(i: int) -> Dict[str, Optional[Tuple[float, int, float]]]:
        keep = np.arange(n) != i
        train = data.subset_rows(keep)
        out: Dict[str, Optional[Tuple[float, int, float]]] = {}
        for m, selector, label in pairs:
            start = time.perf_counter()
            try:
                result = select_subset(
                    train, m, selector, folds, derive_seed(seed, i), 1
                )
            except (ArithmeticError, FoldSizeError, SelectionError) as e:
                logger.warning("Row %d skipped for %s: %s", i, label, e)
                out[label] = None
                continue
            pred = float(result.predict(data.X[i : i + 1])[0])
            out[label] = (
                (pred - float(data.y[i])) ** 2,
                len(result.support),
                time.perf_counter() - start,
            )
        return out

    rows = ordered_map(one, range(n), threads)
    summaries = []
    for _, _, label in pairs:
        done = [row[label] for row in rows if row[label] is not None]
        skipped = n - len(done)
        if not done:
            summaries.append(LooSummary(label, math.nan, math.nan, math.nan, skipped))
            continue
        summaries.append(
            LooSummary(
                label=label,
                rmse=math.sqrt(float(np.mean([d[0] for d in done]))),
                mean_size=float(np.mean([d[1] for d in done])),
                mean_runtime=float(np.mean([d[2] for d in done])),
                skipped=skipped,
            )
        )
    return LooReport(n, p, tuple(summaries), tuple(unavailable))


def df_profiles(
    config: SimConfig, method: str = "boss"
) -> Dict[str, Optional[DfProfile]]:
    """
    hdf from the true mean, Monte-Carlo edf and a bootstrap bdf from the first
    replication, for `method` on the configured design.  Profiles a method
    does not support are None.
    """
    m = method.lower()
    if m == "lasso":
        raise ConfigError("df profiles are tabulated for least-squares paths only")
    X, model = make_true_model(config)
    mu, sigma = model.mu, model.sigma
    out: Dict[str, Optional[DfProfile]] = {"hdf": None, "edf": None, "bdf": None}
    if _incompatible(m, "aicc", "hdf", config.orthogonal) is None:
        out["hdf"] = hdf_profile(X.T @ (mu - mu.mean()), sigma, mu)
    out["edf"] = edf_monte_carlo(
        _edf_rule(m, config.orthogonal),
        X,
        mu,
        sigma,
        reps=config.edf_reps or config.reps,
        seed=derive_seed(config.seed, STREAM_EDF),
        threads=config.threads,
    )
    data = Dataset(X, draw_response(model, config.seed, 0))
    out["bdf"] = dataset_df_profiles(
        data,
        m,
        config.bdf_reps,
        config.seed,
        config.threads,
        config.folds,
        config.orthogonal,
    )["bdf"]
    return out


def dataset_df_profiles(
    data: Dataset,
    method: str = "boss",
    bdf_reps: int = 100,
    seed: int = 42,
    threads: Optional[int] = None,
    folds: int = 10,
    orthogonal: bool = False,
) -> Dict[str, Optional[DfProfile]]:
    """
    The df profiles that need no true mean: hdf and bdf from the estimated
    noise, and ndf.
    """
    m = method.lower()
    builder = path_builder(m, orthogonal)
    path = builder(data)
    out: Dict[str, Optional[DfProfile]] = {
        "ndf": ndf_profile(path),
        "hdf": None,
        "bdf": None,
    }
    if m == "lasso":
        return out
    noise = estimate_noise(data, path.metadata.get("basis"), folds, seed, threads)
    if _incompatible(m, "aicc", "hdf", orthogonal) is None:
        out["hdf"] = df_profile_for(path, "hdf", data, noise)
    out["bdf"] = bdf_bootstrap(
        path_rule(builder),
        data,
        noise.mu_hat,
        noise.sigma_hat,
        bdf_reps,
        derive_seed(seed, STREAM_BOOTSTRAP),
        threads,
    )
    return out
