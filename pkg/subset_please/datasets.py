"""
Real datasets shipped with the package for leave-one-out comparisons.

The CSV files live in `subset_please/data/`; see the README there for where
each one comes from and how its columns were prepared.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .report import read_dataset_csv
from .types import Dataset, InvalidData

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent / "data"


class MissingDataset(FileNotFoundError):
    pass


@dataclass(frozen=True)
class BundledDataset:
    name: str
    filename: str
    target: str
    n: int
    p: int


BUNDLED: Mapping[str, BundledDataset] = {
    "housing": BundledDataset("housing", "housing.csv", "medv", 506, 13),
    "auto": BundledDataset("auto", "auto.csv", "mpg", 392, 6),
}


def dataset_path(name: str) -> Path:
    try:
        entry = BUNDLED[name.lower()]
    except KeyError:
        raise InvalidData(f"Unknown dataset {name!r}; choose from {sorted(BUNDLED)}")
    return DATA_DIR / entry.filename


def load_bundled(name: str) -> Dataset:
    """
    Reads a shipped dataset and checks it has the documented shape.
    """
    path = dataset_path(name)
    entry = BUNDLED[name.lower()]
    if not path.is_file():
        raise MissingDataset(
            f"{path} is not installed; see {DATA_DIR / 'README.md'} for its source"
        )
    data = read_dataset_csv(path, entry.target)
    if (data.n, data.p) != (entry.n, entry.p):
        raise InvalidData(
            f"{path}: expected {entry.n} rows and {entry.p} predictors, "
            f"got {data.n} and {data.p}"
        )
    logger.debug("Loaded %s: n=%d, p=%d", entry.name, data.n, data.p)
    return data
