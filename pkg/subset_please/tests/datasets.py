import tempfile
import unittest
from pathlib import Path
from unittest import mock

import numpy as np
import pandas as pd

from ..datasets import BUNDLED, DATA_DIR, dataset_path, load_bundled, MissingDataset
from ..simulation import loo_real_data
from ..types import InvalidData
from ._designs import SLOW


def _write_table(path: Path, target: str, n: int, p: int) -> None:
    rng = np.random.default_rng(90)
    columns = [f"x{j}" for j in range(p)]
    frame = pd.DataFrame(rng.standard_normal((n, p)), columns=columns)
    frame.insert(0, target, rng.standard_normal(n))
    frame.to_csv(path, index=False)


def _installed(name: str) -> bool:
    return (DATA_DIR / BUNDLED[name].filename).is_file()


class BundledTest(unittest.TestCase):
    def setUp(self) -> None:
        self._dir = tempfile.TemporaryDirectory()
        self.addCleanup(self._dir.cleanup)
        self.dir = Path(self._dir.name)
        patcher = mock.patch("subset_please.datasets.DATA_DIR", self.dir)
        patcher.start()
        self.addCleanup(patcher.stop)

    def test_registry(self) -> None:
        housing = BUNDLED["housing"]
        self.assertEqual(("medv", 506, 13), (housing.target, housing.n, housing.p))
        self.assertEqual(self.dir / "auto.csv", dataset_path("Auto"))
        with self.assertRaisesRegex(InvalidData, "Unknown dataset"):
            dataset_path("iris")

    def test_missing_file(self) -> None:
        with self.assertRaisesRegex(MissingDataset, "README"):
            load_bundled("housing")

    def test_load(self) -> None:
        _write_table(self.dir / "auto.csv", "mpg", 392, 6)
        data = load_bundled("auto")
        self.assertEqual((392, 6), (data.n, data.p))
        self.assertEqual(["x0", "x1", "x2", "x3", "x4", "x5"], list(data.names))

    def test_wrong_shape(self) -> None:
        _write_table(self.dir / "auto.csv", "mpg", 50, 6)
        with self.assertRaisesRegex(InvalidData, "expected 392 rows"):
            load_bundled("auto")


class RealDataLooTest(unittest.TestCase):
    @unittest.skipUnless(SLOW and _installed("housing"), "needs housing.csv")
    def test_housing(self) -> None:
        s = loo_real_data(load_bundled("housing"), threads=4).summary("boss/aicc-hdf")
        self.assertLess(abs(s.rmse / 3.372 - 1.0), 0.015)
        self.assertLess(abs(s.mean_size - 12.0), 0.5)

    @unittest.skipUnless(SLOW and _installed("auto"), "needs auto.csv")
    def test_auto(self) -> None:
        s = loo_real_data(load_bundled("auto"), threads=4).summary("boss/aicc-hdf")
        self.assertLess(abs(s.rmse / 2.628 - 1.0), 0.015)
        self.assertLess(abs(s.mean_size - 3.0), 0.2)
