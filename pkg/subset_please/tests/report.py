import json
import math
import tempfile
import unittest
from pathlib import Path

import numpy as np

from ..report import (
    CsvError,
    df_frame,
    fit_frame,
    fit_to_dict,
    read_dataset_csv,
    sim_frame,
    to_csv,
    to_json,
)
from ..selection import select_subset
from ..simulation import run_experiment
from ..types import Dataset, DfProfile, SimConfig
from ._designs import random_dataset


class ReadCsvTest(unittest.TestCase):
    def _read(self, text: str, target: str = "y") -> Dataset:
        with tempfile.TemporaryDirectory() as d:
            path = Path(d, "data.csv")
            path.write_text(text)
            return read_dataset_csv(path, target)

    def test_good(self) -> None:
        data = self._read("a,y,b\n1,2,3\n4, 5.5,6e0\n")
        self.assertEqual(("a", "b"), data.names)
        np.testing.assert_array_equal([2.0, 5.5], data.y)
        np.testing.assert_array_equal([[1, 3], [4, 6]], data.X)

    def test_bad_cell(self) -> None:
        with self.assertRaisesRegex(CsvError, ":3 \\(column 'a'\\): not a finite number"):
            self._read("a,y\n1,2\nfoo,3\n")
        with self.assertRaisesRegex(CsvError, ":2 \\(column 'y'\\): missing value"):
            self._read("a,y\n1,\n")
        with self.assertRaisesRegex(CsvError, "not a finite number: 'inf'"):
            self._read("a,y\n1,2\ninf,3\n")

    def test_bad_shape(self) -> None:
        with self.assertRaisesRegex(CsvError, "no column named 'y'"):
            self._read("a,b\n1,2\n")
        with self.assertRaisesRegex(CsvError, "empty"):
            self._read("")
        with self.assertRaisesRegex(CsvError, "no data rows"):
            self._read("a,y\n")
        with self.assertRaisesRegex(CsvError, "at least one predictor"):
            self._read("y\n1\n2\n")

    def test_error_fields(self) -> None:
        try:
            self._read("a,y\n1,2\n3,x\n")
        except CsvError as e:
            self.assertEqual(3, e.line)
            self.assertEqual("y", e.column)
        else:
            self.fail("expected CsvError")


class RenderTest(unittest.TestCase):
    def test_json_has_no_infinities(self) -> None:
        text = to_json({"b": math.inf, "a": np.float64(1.5), "c": np.arange(2)})
        self.assertEqual({"a": 1.5, "b": None, "c": [0, 1]}, json.loads(text))
        self.assertLess(text.index('"a"'), text.index('"b"'))

    def test_fit(self) -> None:
        data = random_dataset(60, 5, seed=70, beta=[3, 0, -3])
        result = select_subset(data)
        payload = json.loads(to_json(fit_to_dict(result, data.names)))
        self.assertTrue({"x1", "x3"} <= set(payload["selected"]))
        self.assertEqual(set(payload["selected"]), set(payload["coefficients"]))
        self.assertEqual("AICc", payload["trace"]["criterion"])
        self.assertEqual("full-ols", payload["noise_source"])
        self.assertEqual(6, len(payload["df"]))
        frame = fit_frame(result, data.names)
        self.assertEqual(["(intercept)"] + payload["selected"], list(frame["term"]))
        self.assertTrue(to_csv(frame).startswith("term,coefficient\n"))

    def test_df_frame(self) -> None:
        frame = df_frame(
            [
                DfProfile("ndf", np.arange(3.0)),
                None,
                DfProfile("edf", np.ones(3), std_errors=np.zeros(3)),
            ],
            ["ndf", "hdf", "edf"],
        )
        self.assertEqual(["k", "ndf", "hdf", "edf", "edf_se"], list(frame.columns))
        self.assertTrue(frame["hdf"].isna().all())

    def test_sim_frame(self) -> None:
        config = SimConfig(
            design="orth-sparse-ex1", n=40, p=8, reps=2, selectors=("aicc-ndf",)
        )
        frame = sim_frame([run_experiment(config)])
        self.assertEqual(1, len(frame))
        self.assertIn("mean_rmse[boss/aicc-ndf]", frame.columns)
        self.assertIn("pct_worse[null]", frame.columns)
        self.assertEqual(8, int(frame["p"][0]))
