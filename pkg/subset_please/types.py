from __future__ import annotations

from dataclasses import dataclass, field

from types import MappingProxyType
from typing import Any, Mapping, Optional, Sequence, Tuple

import numpy as np


class InvalidData(ValueError):
    pass


class ConfigError(ValueError):
    pass


SNR_LEVELS: Mapping[str, float] = MappingProxyType(
    {"lsnr": 0.2, "msnr": 1.5, "hsnr": 7.0}
)

ORTHOGONAL_DESIGNS = frozenset({"orth-sparse-ex1", "orth-sparse-ex2", "orth-dense"})
GENERAL_DESIGNS = frozenset(
    {"sparse-ex1", "sparse-ex2", "sparse-ex3", "sparse-ex4", "dense"}
)


def _frozen_array(value: Any, ndim: int, what: str) -> np.ndarray:
    arr = np.array(value, dtype=float)
    if ndim == 2 and arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != ndim:
        raise InvalidData(f"{what} must be {ndim}-dimensional, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    A regression problem: response `y` (n,), design `X` (n, p) and column names.

    Arrays are copied to read-only float arrays on construction.
    """

    X: np.ndarray
    y: np.ndarray
    names: Sequence[str] = ()

    def __post_init__(self) -> None:
        X = _frozen_array(self.X, 2, "X")
        y = _frozen_array(self.y, 1, "y")
        n, p = X.shape
        if n < 1 or p < 1:
            raise InvalidData(f"Need n >= 1 and p >= 1, got n={n}, p={p}")
        if y.shape[0] != n:
            raise InvalidData(f"y has {y.shape[0]} rows but X has {n}")
        if not np.all(np.isfinite(X)):
            row, col = np.argwhere(~np.isfinite(X))[0]
            raise InvalidData(f"Non-finite X entry at row {row}, column {col}")
        if not np.all(np.isfinite(y)):
            row = int(np.argwhere(~np.isfinite(y))[0][0])
            raise InvalidData(f"Non-finite y entry at row {row}")

        names = tuple(str(s) for s in self.names) or tuple(
            f"x{j + 1}" for j in range(p)
        )
        if len(names) != p:
            raise InvalidData(f"{len(names)} names for {p} columns")
        if len(set(names)) != p:
            dupes = sorted({s for s in names if names.count(s) > 1})
            raise InvalidData(f"Duplicate column names: {dupes}")

        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "names", names)

    @property
    def n(self) -> int:
        return int(self.X.shape[0])

    @property
    def p(self) -> int:
        return int(self.X.shape[1])

    def subset_rows(self, rows: np.ndarray) -> Dataset:
        return Dataset(self.X[rows], self.y[rows], self.names)


@dataclass(frozen=True, eq=False)
class CenteredData:
    Xc: np.ndarray
    yc: np.ndarray
    xbar: np.ndarray
    ybar: float
    names: Sequence[str] = ()

    def as_dataset(self) -> Dataset:
        return Dataset(self.Xc, self.yc, self.names)


@dataclass(frozen=True, eq=False)
class QRState:
    """
    Thin QR factorization of an ordered set of columns, X[:, order] = Q @ R.

    `residual_cache` (n, p), when present, holds every predictor's residual after
    projecting out the columns of Q; path builders use it for ordering.
    """

    Q: np.ndarray
    R: np.ndarray
    order: Tuple[int, ...] = ()
    residual_cache: Optional[np.ndarray] = None

    @classmethod
    def empty(cls, n: int) -> QRState:
        return cls(np.zeros((n, 0)), np.zeros((0, 0)), ())

    @property
    def k(self) -> int:
        return len(self.order)


@dataclass(frozen=True, eq=False)
class SolutionPath:
    """
    Coefficients for every candidate model of one method.

    Column j of `coefs` (p rows, original X positions) and `intercepts[j]` give
    the fitted model at subset size j (BOSS/FS/BS) or at `lambdas[j]` (LBS,
    lasso).  Column 0 of size-indexed paths is the null model.
    """

    method: str
    coefs: np.ndarray
    intercepts: np.ndarray
    supports: Tuple[Tuple[int, ...], ...]
    rss: np.ndarray
    n: int
    order: Tuple[int, ...] = ()
    z: Optional[np.ndarray] = None
    lambdas: Optional[np.ndarray] = None
    metadata: Mapping[str, Any] = field(default_factory=lambda: MappingProxyType({}))

    @property
    def size(self) -> int:
        return int(self.coefs.shape[1])

    def nonzero(self, k: int) -> Tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.coefs[:, k]))

    def predict(self, X: np.ndarray, k: Optional[int] = None) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if k is None:
            return X @ self.coefs + self.intercepts
        return X @ self.coefs[:, k] + self.intercepts[k]


@dataclass(frozen=True, eq=False)
class DfProfile:
    # ndf | hdf | edf | bdf
    method: str
    values: np.ndarray
    lambda_star: Optional[np.ndarray] = None
    mu_hat: Optional[np.ndarray] = None
    sigma_hat: Optional[float] = None
    # Monte-Carlo standard errors, edf/bdf only
    std_errors: Optional[np.ndarray] = None


@dataclass(frozen=True, eq=False)
class CriterionTrace:
    # Cp | AIC | AICc | BIC | ErrKL | CV
    criterion: str
    df_source: Optional[str]
    values: np.ndarray
    argmin: int

    @classmethod
    def from_values(
        cls, criterion: str, df_source: Optional[str], values: np.ndarray
    ) -> CriterionTrace:
        """
        The argmin is the smallest k among minimal finite values, or -1 if every
        value is +inf.
        """
        values = np.asarray(values, dtype=float)
        finite = np.isfinite(values)
        if not finite.any():
            return cls(criterion, df_source, values, -1)
        best = np.min(values[finite])
        return cls(criterion, df_source, values, int(np.flatnonzero(values == best)[0]))


@dataclass(frozen=True, eq=False)
class NoiseEstimate:
    mu_hat: np.ndarray
    sigma_hat: float
    # full-ols | lasso-reid | known
    source: str


@dataclass(frozen=True, eq=False)
class SelectionResult:
    k_selected: int
    coefficients: np.ndarray
    intercept: float
    trace: CriterionTrace
    noise: Optional[NoiseEstimate] = None
    df_profile: Optional[DfProfile] = None
    path: Optional[SolutionPath] = None

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.coefficients))

    def predict(self, X: np.ndarray) -> np.ndarray:
        return np.asarray(X, dtype=float) @ self.coefficients + self.intercept


@dataclass(frozen=True, eq=False)
class TrueModel:
    beta: np.ndarray
    mu: np.ndarray
    sigma: float
    snr: float
    # None for fixed orthogonal designs
    Sigma: Optional[np.ndarray] = None

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.beta))


def as_tuple(value: Any) -> Tuple[Any, ...]:
    if isinstance(value, str):
        return tuple(s.strip() for s in value.split(",") if s.strip())
    return tuple(value)


@dataclass(frozen=True)
class SimConfig:
    design: str
    n: int
    p: int
    rho: float = 0.0
    # lsnr | msnr | hsnr, or a positive number
    snr: str = "hsnr"
    reps: int = 200
    seed: int = 42
    methods: Tuple[str, ...] = ("boss",)
    selectors: Tuple[str, ...] = ("aicc-hdf",)
    # Defaults to "bs" for orthogonal designs and "boss" otherwise
    baseline: Optional[str] = None
    folds: int = 10
    edf_reps: Optional[int] = None
    bdf_reps: int = 100
    threads: int = 1
    record_runtime: bool = False
    # Feed the true mu and sigma to hdf, bdf and Cp instead of estimates
    known_noise: bool = False

    def __post_init__(self) -> None:
        design = self.design.lower()
        if design not in ORTHOGONAL_DESIGNS | GENERAL_DESIGNS:
            raise ConfigError(
                f"Unknown design {self.design!r}; choose from "
                f"{sorted(ORTHOGONAL_DESIGNS | GENERAL_DESIGNS)}"
            )
        object.__setattr__(self, "design", design)
        object.__setattr__(self, "snr", str(self.snr).lower())
        object.__setattr__(self, "methods", as_tuple(self.methods))
        object.__setattr__(self, "selectors", as_tuple(self.selectors))
        if self.n < 3 or self.p < 1:
            raise ConfigError(f"Need n >= 3 and p >= 1, got n={self.n}, p={self.p}")
        if not 0.0 <= self.rho < 1.0:
            raise ConfigError(f"rho must be in [0, 1), got {self.rho}")
        if self.reps < 1:
            raise ConfigError(f"reps must be positive, got {self.reps}")
        if self.snr_value <= 0:
            raise ConfigError(f"snr must be positive, got {self.snr}")

    @property
    def snr_value(self) -> float:
        if self.snr in SNR_LEVELS:
            return SNR_LEVELS[self.snr]
        try:
            return float(self.snr)
        except ValueError:
            raise ConfigError(
                f"Unknown snr {self.snr!r}; use lsnr, msnr, hsnr or a number"
            )

    @property
    def orthogonal(self) -> bool:
        return self.design in ORTHOGONAL_DESIGNS

    @property
    def baseline_method(self) -> str:
        if self.baseline:
            return self.baseline
        return "bs" if self.orthogonal else "boss"


@dataclass(frozen=True)
class MethodSummary:
    # "<method>/<selector>", or "null" / "full-ols"
    label: str
    mean_rmse: float
    se_rmse: float
    pct_worse: float
    relative_efficiency: float
    sparsistency: float
    extra_variables: float
    mean_size: float
    runtime: Optional[float] = None


@dataclass(frozen=True, eq=False)
class SimReport:
    config: SimConfig
    sigma: float
    oracle_rmse: float
    summaries: Tuple[MethodSummary, ...]
    # mean RMSE at every path column, per method
    path_rmse: Mapping[str, Tuple[float, ...]] = field(
        default_factory=lambda: MappingProxyType({})
    )
    # per-replication selected subset size, per label
    selected_sizes: Mapping[str, Tuple[int, ...]] = field(
        default_factory=lambda: MappingProxyType({})
    )
    skipped: Tuple[str, ...] = ()
    flags: Tuple[str, ...] = ()

    def summary(self, label: str) -> MethodSummary:
        for s in self.summaries:
            if s.label == label:
                return s
        raise KeyError(label)


@dataclass(frozen=True, eq=False)
class LbsComparison:
    config: SimConfig
    sigma: float
    lambdas: np.ndarray
    # "bs/cp-edf" and "lbs/cp-edf"
    summaries: Tuple[MethodSummary, ...]
    # selected size -> replication count, per label
    size_counts: Mapping[str, Mapping[int, int]]
    # (LBS size - BS size) -> replication count
    diff_counts: Mapping[int, int]
    more_fraction: float
    fewer_fraction: float

    def summary(self, label: str) -> MethodSummary:
        for s in self.summaries:
            if s.label == label:
                return s
        raise KeyError(label)


@dataclass(frozen=True)
class LooSummary:
    label: str
    rmse: float
    mean_size: float
    mean_runtime: float
    skipped: int = 0


@dataclass(frozen=True, eq=False)
class LooReport:
    n: int
    p: int
    summaries: Tuple[LooSummary, ...]
    # labels that could not run at all, with the reason
    unavailable: Tuple[str, ...] = ()

    def summary(self, label: str) -> LooSummary:
        for s in self.summaries:
            if s.label == label:
                return s
        raise KeyError(label)
