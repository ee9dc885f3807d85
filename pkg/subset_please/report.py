"""
Reading datasets from CSV and rendering results as JSON or CSV tables.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence

import numpy as np
import pandas as pd

from .types import (
    Dataset,
    DfProfile,
    LbsComparison,
    LooReport,
    MethodSummary,
    SelectionResult,
    SimReport,
)

METRICS = (
    "mean_rmse",
    "se_rmse",
    "pct_worse",
    "relative_efficiency",
    "sparsistency",
    "extra_variables",
    "mean_size",
)


class CsvError(ValueError):
    def __init__(self, path: str, line: Optional[int], column: Optional[str], msg: str):
        where = path
        if line is not None:
            where += f":{line}"
        if column is not None:
            where += f" (column {column!r})"
        super().__init__(f"{where}: {msg}")
        self.path = path
        self.line = line
        self.column = column


def read_dataset_csv(path: Path, target: str) -> Dataset:
    """
    Comma-separated, UTF-8, one header row, every cell numeric.  `target` names
    the response column; all other columns are predictors in file order.
    """
    name = str(path)
    try:
        frame = pd.read_csv(
            path,
            dtype=str,
            keep_default_na=False,
            skipinitialspace=True,
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError:
        raise CsvError(name, None, None, "file is empty")
    except pd.errors.ParserError as e:
        raise CsvError(name, None, None, str(e).strip())
    except UnicodeDecodeError as e:
        raise CsvError(name, None, None, f"not UTF-8 ({e.reason})")

    if target not in frame.columns:
        raise CsvError(
            name, 1, None, f"no column named {target!r}; have {list(frame.columns)}"
        )
    if frame.shape[0] == 0:
        raise CsvError(name, None, None, "no data rows")
    if frame.shape[1] < 2:
        raise CsvError(name, 1, None, "need the target and at least one predictor")

    values = np.empty(frame.shape, dtype=float)
    for j, column in enumerate(frame.columns):
        raw = frame[column].str.strip()
        parsed = pd.to_numeric(raw, errors="coerce")
        bad = parsed.isna().to_numpy() | ~np.isfinite(parsed.to_numpy(dtype=float))
        if bad.any():
            row = int(np.flatnonzero(bad)[0])
            cell = raw.iloc[row]
            what = "missing value" if cell == "" else f"not a finite number: {cell!r}"
            # Line 1 is the header.
            raise CsvError(name, row + 2, str(column), what)
        values[:, j] = parsed.to_numpy(dtype=float)

    names = [str(c) for c in frame.columns if c != target]
    y = values[:, list(frame.columns).index(target)]
    X = values[:, [list(frame.columns).index(c) for c in names]]
    return Dataset(X, y, names)


def _clean(value: Any) -> Any:
    # JSON has no inf or nan.
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, np.ndarray):
        return [_clean(v) for v in value.tolist()]
    if isinstance(value, Mapping):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def _summary_dict(s: MethodSummary) -> Dict[str, Any]:
    out = {metric: getattr(s, metric) for metric in METRICS}
    if s.runtime is not None:
        out["runtime"] = s.runtime
    return out


def fit_to_dict(result: SelectionResult, names: Sequence[str]) -> Dict[str, Any]:
    out: Dict[str, Any] = {
        "k_selected": result.k_selected,
        "intercept": result.intercept,
        "coefficients": {
            names[j]: float(result.coefficients[j]) for j in result.support
        },
        "selected": [names[j] for j in result.support],
        "trace": {
            "criterion": result.trace.criterion,
            "df_source": result.trace.df_source,
            "values": result.trace.values,
        },
    }
    if result.df_profile is not None:
        out["df"] = result.df_profile.values
    if result.noise is not None:
        out["sigma_hat"] = result.noise.sigma_hat
        out["noise_source"] = result.noise.source
    return out


def sim_to_dict(report: SimReport) -> Dict[str, Any]:
    c = report.config
    return {
        "config": {
            "design": c.design,
            "n": c.n,
            "p": c.p,
            "rho": c.rho,
            "snr": c.snr,
            "reps": c.reps,
            "seed": c.seed,
            "baseline": c.baseline_method,
            "known_noise": c.known_noise,
        },
        "sigma": report.sigma,
        "oracle_rmse": report.oracle_rmse,
        "summaries": {s.label: _summary_dict(s) for s in report.summaries},
        "path_rmse": dict(report.path_rmse),
        "selected_sizes": dict(report.selected_sizes),
        "skipped": list(report.skipped),
        "flags": list(report.flags),
    }


def lbs_to_dict(cmp: LbsComparison) -> Dict[str, Any]:
    return {
        "design": cmp.config.design,
        "n": cmp.config.n,
        "p": cmp.config.p,
        "snr": cmp.config.snr,
        "sigma": cmp.sigma,
        "lambda_max": float(cmp.lambdas[0]),
        "lambda_min": float(cmp.lambdas[-1]),
        "n_lambda": len(cmp.lambdas),
        "summaries": {s.label: _summary_dict(s) for s in cmp.summaries},
        "size_counts": {k: dict(v) for k, v in cmp.size_counts.items()},
        "diff_counts": dict(cmp.diff_counts),
        "more_fraction": cmp.more_fraction,
        "fewer_fraction": cmp.fewer_fraction,
    }


def loo_to_dict(report: LooReport) -> Dict[str, Any]:
    return {
        "n": report.n,
        "p": report.p,
        "summaries": {
            s.label: {
                "rmse": s.rmse,
                "mean_size": s.mean_size,
                "mean_runtime": s.mean_runtime,
                "skipped": s.skipped,
            }
            for s in report.summaries
        },
        "unavailable": list(report.unavailable),
    }


def df_frame(
    profiles: Sequence[Optional[DfProfile]], labels: Sequence[str]
) -> pd.DataFrame:
    """
    One row per subset size k, one column per df profile (missing ones as NaN),
    plus Monte-Carlo standard errors where available.
    """
    width = max(len(p.values) for p in profiles if p is not None)
    frame = pd.DataFrame({"k": np.arange(width)})
    for label, profile in zip(labels, profiles):
        column = np.full(width, np.nan)
        if profile is not None:
            column[: len(profile.values)] = profile.values
        frame[label] = column
        if profile is not None and profile.std_errors is not None:
            se = np.full(width, np.nan)
            se[: len(profile.std_errors)] = profile.std_errors
            frame[f"{label}_se"] = se
    return frame


def to_json(payload: Any) -> str:
    return json.dumps(_clean(payload), sort_keys=True, indent=2, allow_nan=False) + "\n"


def sim_frame(reports: Sequence[SimReport]) -> pd.DataFrame:
    """
    One row per (n, snr, p); one column per (metric, method/selector).
    """
    rows: List[Dict[str, Any]] = []
    for report in reports:
        row: Dict[str, Any] = {
            "n": report.config.n,
            "snr": report.config.snr,
            "p": report.config.p,
            "oracle_rmse": report.oracle_rmse,
        }
        for s in report.summaries:
            for metric in METRICS:
                row[f"{metric}[{s.label}]"] = getattr(s, metric)
        rows.append(row)
    return pd.DataFrame(rows)


def lbs_frame(cmp: LbsComparison) -> pd.DataFrame:
    sizes = sorted({k for counts in cmp.size_counts.values() for k in counts})
    rows = []
    for s in cmp.summaries:
        row: Dict[str, Any] = {"label": s.label}
        row.update({metric: getattr(s, metric) for metric in METRICS})
        for k in sizes:
            row[f"size={k}"] = cmp.size_counts[s.label].get(k, 0)
        rows.append(row)
    return pd.DataFrame(rows)


def loo_frame(report: LooReport) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "label": s.label,
                "rmse": s.rmse,
                "mean_size": s.mean_size,
                "mean_runtime": s.mean_runtime,
                "skipped": s.skipped,
            }
            for s in report.summaries
        ]
    )


def fit_frame(result: SelectionResult, names: Sequence[str]) -> pd.DataFrame:
    rows = [{"term": "(intercept)", "coefficient": result.intercept}]
    rows += [
        {"term": names[j], "coefficient": float(result.coefficients[j])}
        for j in result.support
    ]
    return pd.DataFrame(rows)


def to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format="%.10g")
