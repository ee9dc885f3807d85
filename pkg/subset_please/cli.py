"""
Command-line front end.

    subset-please fit --input data.csv --target y [--method boss] [--selector aicc-hdf]
    subset-please simulate --design orth-sparse-ex1 --n 200 --p 30 --snr hsnr
    subset-please df --design orth-sparse-ex1 --n 200 --p 14
    subset-please loo --input data.csv --target y --methods boss,fs
    subset-please loo --dataset housing --method boss --selector aicc-hdf
    subset-please lbs-compare --design orth-sparse-ex1 --n 200 --p 30
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Mapping, Optional, Sequence

import numpy as np

from .config import (
    build_run_config,
    CLI_SELECTORS,
    COMMANDS,
    FORMATS,
    load_config,
    normalize,
    RunConfig,
)
from .datasets import BUNDLED, load_bundled
from .paths import CapabilityError
from .report import (
    CsvError,
    df_frame,
    fit_frame,
    fit_to_dict,
    lbs_frame,
    lbs_to_dict,
    loo_frame,
    loo_to_dict,
    read_dataset_csv,
    sim_frame,
    sim_to_dict,
    to_csv,
    to_json,
)
from .selection import (
    FoldSizeError,
    METHODS,
    NoiseEstimationError,
    select_subset,
    SelectionError,
)
from .simulation import (
    compare_lbs,
    dataset_df_profiles,
    df_profiles,
    loo_real_data,
    run_experiment,
)
from .types import ConfigError, Dataset, InvalidData

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SELECTION = 3
EXIT_NUMERICAL = 4


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="INI or TOML settings file")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--threads", type=int)
    parser.add_argument("--folds", type=int)
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument("--format", choices=FORMATS)
    parser.add_argument("-v", "--verbose", action="count", default=0)


def _data_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", help="CSV with a header row")
    parser.add_argument("--target", help="name of the response column")
    parser.add_argument(
        "--dataset",
        choices=sorted(BUNDLED),
        help="a bundled dataset instead of --input",
    )


def _design_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--design")
    parser.add_argument("--n", help="sample size(s), comma-separated")
    parser.add_argument("--p", help="predictor count(s), comma-separated")
    parser.add_argument("--rho", type=float)
    parser.add_argument("--snr", help="lsnr, msnr, hsnr or numbers, comma-separated")
    parser.add_argument("--reps", type=int)
    parser.add_argument("--edf-reps", type=int)
    parser.add_argument("--bdf-reps", type=int)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subset-please",
        description="Best subset selection by orthogonalized subsets with heuristic df",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="select a model on a CSV dataset")
    _data_flags(fit)
    fit.add_argument("--method", choices=METHODS)
    fit.add_argument("--selector", choices=CLI_SELECTORS)
    _common(fit)

    simulate = sub.add_parser("simulate", help="run a simulation experiment grid")
    _design_flags(simulate)
    simulate.add_argument(
        "--methods", "--method", help="comma-separated, e.g. boss,fs,lasso"
    )
    simulate.add_argument(
        "--selectors",
        "--selector",
        help="comma-separated <aicc|aic|cp|bic>-<hdf|ndf|edf|bdf>, cv, errkl",
    )
    simulate.add_argument("--baseline", choices=METHODS)
    simulate.add_argument("--record-runtime", action="store_const", const=True)
    simulate.add_argument(
        "--known-noise",
        action="store_const",
        const=True,
        help="use the true mu and sigma for hdf, bdf and Cp",
    )
    _common(simulate)

    df = sub.add_parser("df", help="tabulate df profiles by subset size")
    _data_flags(df)
    _design_flags(df)
    df.add_argument("--method", choices=METHODS)
    _common(df)

    loo = sub.add_parser("loo", help="leave-one-out prediction error on a CSV dataset")
    _data_flags(loo)
    loo.add_argument("--methods", "--method")
    loo.add_argument("--selectors", "--selector")
    _common(loo)

    lbs = sub.add_parser(
        "lbs-compare", help="best subset versus Lagrangian best subset"
    )
    _design_flags(lbs)
    lbs.add_argument("--n-lambda", type=int)
    lbs.add_argument("--alpha", type=float)
    _common(lbs)
    return parser


def _emit(config: RunConfig, text: str) -> None:
    if config.out:
        Path(config.out).write_text(text, encoding="utf-8")
        logger.info("Wrote %s", config.out)
    else:
        sys.stdout.write(text)


def _read_data(config: RunConfig) -> Dataset:
    if config.dataset:
        return load_bundled(config.dataset)
    assert config.input and config.target
    return read_dataset_csv(Path(config.input), config.target)


def cmd_fit(config: RunConfig) -> int:
    data = _read_data(config)
    result = select_subset(
        data,
        config.method,
        config.selector,
        config.folds,
        config.seed,
        config.threads,
        config.bdf_reps,
    )
    if config.format == "json":
        _emit(config, to_json(fit_to_dict(result, data.names)))
    else:
        _emit(config, to_csv(fit_frame(result, data.names)))
    return EXIT_OK


def cmd_simulate(config: RunConfig) -> int:
    reports = [run_experiment(sim) for sim in config.sim_configs()]
    table = sim_frame(reports)
    if config.format == "json":
        _emit(config, to_json([sim_to_dict(r) for r in reports]))
    else:
        _emit(config, to_csv(table))
    if config.out:
        sys.stdout.write(table.to_string(index=False) + "\n")
    for r in reports:
        for notice in r.skipped + r.flags:
            sys.stderr.write(f"note: n={r.config.n} p={r.config.p}: {notice}\n")
    return EXIT_OK


def cmd_df(config: RunConfig) -> int:
    if config.dataset or config.input:
        data = _read_data(config)
        profiles = dataset_df_profiles(
            data,
            config.method,
            config.bdf_reps,
            config.seed,
            config.threads,
            config.folds,
        )
    else:
        profiles = df_profiles(config.sim_configs()[0], config.method)
    labels = [k for k in ("ndf", "hdf", "edf", "bdf") if k in profiles]
    frame = df_frame([profiles[k] for k in labels], labels)
    if config.format == "csv":
        _emit(config, to_csv(frame))
        return EXIT_OK
    payload: Dict[str, Any] = {"k": frame["k"].tolist()}
    for label in labels:
        profile = profiles[label]
        payload[label] = None if profile is None else profile.values
    hdf, edf = profiles.get("hdf"), profiles.get("edf")
    if hdf is not None and edf is not None:
        gap = np.abs(hdf.values - edf.values)
        payload["max_gap"] = {"k": int(np.argmax(gap)), "value": float(np.max(gap))}
    _emit(config, to_json(payload))
    return EXIT_OK


def cmd_loo(config: RunConfig) -> int:
    data = _read_data(config)
    report = loo_real_data(
        data,
        config.methods,
        config.selectors,
        config.folds,
        config.seed,
        config.threads,
    )
    if config.format == "json":
        _emit(config, to_json(loo_to_dict(report)))
    else:
        _emit(config, to_csv(loo_frame(report)))
    return EXIT_OK


def cmd_lbs_compare(config: RunConfig) -> int:
    sim = config.sim_configs()[0]
    if not sim.orthogonal:
        raise ConfigError(f"lbs-compare needs an orthogonal design, got {sim.design}")
    cmp = compare_lbs(sim, config.n_lambda, config.alpha)
    if config.format == "json":
        _emit(config, to_json(lbs_to_dict(cmp)))
    else:
        _emit(config, to_csv(lbs_frame(cmp)))
    return EXIT_OK


COMMAND_FNS: Mapping[str, Callable[[RunConfig], int]] = {
    "fit": cmd_fit,
    "simulate": cmd_simulate,
    "df": cmd_df,
    "loo": cmd_loo,
    "lbs-compare": cmd_lbs_compare,
}
assert set(COMMAND_FNS) == set(COMMANDS)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    flags = {
        k: v
        for k, v in vars(args).items()
        if k not in ("command", "config", "verbose") and v is not None
    }
    try:
        file_values = load_config(args.config) if args.config else {}
        config = build_run_config(
            args.command, file_values, normalize(flags, "command line")
        )
        return COMMAND_FNS[args.command](config)
    except (
        ConfigError,
        CsvError,
        InvalidData,
        CapabilityError,
        FoldSizeError,
        FileNotFoundError,
    ) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except (SelectionError, NoiseEstimationError) as e:
        sys.stderr.write(f"selection failed: {e}\n")
        return EXIT_SELECTION
    except ArithmeticError as e:
        sys.stderr.write(f"numerical failure: {e}\n")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
