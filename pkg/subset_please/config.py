"""
Run settings, layered as built-in defaults, then a config file, then
command-line flags.

Config files are INI (section ``[subset-please]``) or, by ``.toml`` suffix,
TOML (table ``[subset-please]`` or top-level keys).  Keys are the flag names,
with dashes or underscores.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, Mapping, Optional, Tuple

try:
    import tomllib as toml
except ImportError:
    import toml  # type: ignore[no-redef,unused-ignore]

from configparser import Error as ConfigParserError, RawConfigParser

from .parallel import resolve_threads
from .types import as_tuple, ConfigError, SimConfig

SECTION = "subset-please"

COMMANDS = ("fit", "simulate", "df", "loo", "lbs-compare")
CLI_SELECTORS = ("aicc-hdf", "cp-hdf", "bic-hdf", "aicc-ndf", "cv")
FORMATS = ("json", "csv")


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: Optional[str] = None
    target: Optional[str] = None
    # a bundled dataset name, in place of input and target
    dataset: Optional[str] = None
    method: str = "boss"
    selector: str = "aicc-hdf"
    folds: int = 10
    seed: int = 42
    reps: int = 200
    threads: Optional[int] = None
    out: Optional[str] = None
    format: str = "json"
    # simulate / df / lbs-compare
    design: Optional[str] = None
    n: Tuple[int, ...] = ()
    p: Tuple[int, ...] = ()
    rho: float = 0.0
    snr: Tuple[str, ...] = ("hsnr",)
    methods: Tuple[str, ...] = ("boss",)
    selectors: Tuple[str, ...] = ("aicc-hdf",)
    baseline: Optional[str] = None
    edf_reps: Optional[int] = None
    bdf_reps: int = 100
    n_lambda: int = 200
    alpha: float = 0.001
    record_runtime: bool = False
    known_noise: bool = False

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"Unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"Unknown format {self.format!r}; choose from {FORMATS}")
        if self.selector.lower() not in CLI_SELECTORS:
            raise ConfigError(
                f"Unknown selector {self.selector!r}; choose from {CLI_SELECTORS}"
            )
        if self.folds < 2:
            raise ConfigError(f"folds must be at least 2, got {self.folds}")
        if self.reps < 1:
            raise ConfigError(f"reps must be positive, got {self.reps}")
        has_data = bool(self.dataset or (self.input and self.target))
        if self.command in ("fit", "loo") and not has_data:
            raise ConfigError(
                f"{self.command} needs --input and --target, or --dataset"
            )
        if self.command in ("simulate", "lbs-compare") and not (
            self.design and self.n and self.p
        ):
            raise ConfigError(f"{self.command} needs --design, --n and --p")
        has_design = bool(self.design and self.n and self.p)
        if self.command == "df" and not (has_data or has_design):
            raise ConfigError(
                "df needs --input and --target, --dataset, or --design, --n and --p"
            )

    def sim_configs(self) -> Tuple[SimConfig, ...]:
        """
        One SimConfig per (n, snr, p), in that nesting order.
        """
        assert self.design is not None
        return tuple(
            SimConfig(
                design=self.design,
                n=n,
                p=p,
                rho=self.rho,
                snr=snr,
                reps=self.reps,
                seed=self.seed,
                methods=self.methods,
                selectors=self.selectors,
                baseline=self.baseline,
                folds=self.folds,
                edf_reps=self.edf_reps,
                bdf_reps=self.bdf_reps,
                threads=resolve_threads(self.threads),
                record_runtime=self.record_runtime,
                known_noise=self.known_noise,
            )
            for n in self.n
            for snr in self.snr
            for p in self.p
        )


def _to_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    s = str(value).strip().lower()
    if s in ("1", "true", "yes", "on"):
        return True
    if s in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {value!r}")


def _ints(value: Any) -> Tuple[int, ...]:
    if isinstance(value, int):
        return (value,)
    return tuple(int(v) for v in as_tuple(value))


def _strs(value: Any) -> Tuple[str, ...]:
    if isinstance(value, (int, float)):
        return (str(value),)
    return tuple(str(v) for v in as_tuple(value))


def _optional_int(value: Any) -> Optional[int]:
    return None if value in (None, "") else int(value)


_CONVERTERS: Mapping[str, Callable[[Any], Any]] = {
    "input": str,
    "target": str,
    "dataset": str,
    "method": str,
    "selector": str,
    "folds": int,
    "seed": int,
    "reps": int,
    "threads": _optional_int,
    "out": str,
    "format": str,
    "design": str,
    "n": _ints,
    "p": _ints,
    "rho": float,
    "snr": _strs,
    "methods": _strs,
    "selectors": _strs,
    "baseline": str,
    "edf_reps": _optional_int,
    "bdf_reps": int,
    "n_lambda": int,
    "alpha": float,
    "record_runtime": _to_bool,
    "known_noise": _to_bool,
}


def normalize(values: Mapping[str, Any], source: str) -> Dict[str, Any]:
    """
    Canonical keys and typed values; unknown keys are an error.
    """
    out = {}
    for key, value in values.items():
        name = key.strip().replace("-", "_")
        if name not in _CONVERTERS:
            raise ConfigError(f"{source}: unknown setting {key!r}")
        try:
            out[name] = _CONVERTERS[name](value)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"{source}: bad value for {key!r}: {e}")
    return out


def load_config(path: Path) -> Dict[str, Any]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read config {path}: {e}")

    if path.suffix == ".toml":
        try:
            doc = toml.loads(text)
        except Exception as e:
            raise ConfigError(f"{path}: invalid TOML: {e}")
        values = doc.get(SECTION, doc)
        if not isinstance(values, dict):
            raise ConfigError(f"{path}: [{SECTION}] must be a table")
    else:
        parser = RawConfigParser()
        try:
            parser.read_string(text, source=str(path))
        except ConfigParserError as e:
            raise ConfigError(f"{path}: invalid INI: {e}")
        if not parser.has_section(SECTION):
            raise ConfigError(f"{path}: no [{SECTION}] section")
        values = dict(parser.items(SECTION))
    return normalize(values, str(path))


def build_run_config(
    command: str,
    file_values: Optional[Mapping[str, Any]] = None,
    flag_values: Optional[Mapping[str, Any]] = None,
) -> RunConfig:
    """
    Merges the layers; a flag left as None does not override the file.
    """
    merged: Dict[str, Any] = {}
    merged.update(file_values or {})
    merged.update({k: v for k, v in (flag_values or {}).items() if v is not None})
    known = {f.name for f in dataclasses.fields(RunConfig)}
    return RunConfig(command=command, **{k: v for k, v in merged.items() if k in known})
