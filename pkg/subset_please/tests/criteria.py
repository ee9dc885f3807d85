import math
import unittest

import numpy as np

from ..criteria import (
    aic,
    aicc,
    bic,
    cp,
    criterion_trace,
    criterion_values,
    err_kl_estimate,
    err_kl_train,
)
from ..types import CriterionTrace


class CriteriaTest(unittest.TestCase):
    def test_cp(self) -> None:
        self.assertEqual(22.0, cp(10.0, 3.0, 2.0))
        self.assertEqual(2 * 7, cp(0.0, 7, 1.0))
        self.assertEqual(5.0, cp(5.0, 0.0, 3.0))
        with self.assertRaises(ValueError):
            cp(1.0, 1.0, 0.0)

    def test_aicc(self) -> None:
        self.assertAlmostEqual(100 * 100 / 98, aicc(100.0, 0.0, 100))
        self.assertEqual(math.inf, aicc(50.0, 98.0, 100))
        self.assertEqual(math.inf, aicc(50.0, 99.5, 100))
        self.assertEqual(math.inf, aicc(0.0, 1.0, 100))

    def test_aic_bic(self) -> None:
        self.assertAlmostEqual(0.0, aic(10.0, 0.0, 10))
        self.assertAlmostEqual(6.0, aic(10.0, 3.0, 10))
        self.assertAlmostEqual(0.0, bic(10.0, 0.0, 10))
        self.assertAlmostEqual(math.log(200), bic(200.0, 1.0, 200))
        self.assertEqual(math.inf, aic(0.0, 1.0, 10))
        self.assertEqual(math.inf, bic(0.0, 1.0, 10))

    def test_err_kl_train(self) -> None:
        self.assertAlmostEqual(-100.0, err_kl_train(100.0, 100))
        self.assertAlmostEqual(0.0, err_kl_train(100 * math.e, 100), places=10)
        self.assertEqual(math.inf, err_kl_train(0.0, 100))

    def test_aicc_is_train_error_plus_penalty(self) -> None:
        n = 60
        for rss in (1.0, 30.0, 600.0):
            for df in (0.0, 2.5, 10.0):
                expected = n * (n + df) / (n - df - 2) + n
                self.assertAlmostEqual(
                    expected, aicc(rss, df, n) - err_kl_train(rss, n), places=8
                )

    def test_aic_below_aicc(self) -> None:
        for n in (10, 50, 200):
            for df in range(0, n - 2):
                self.assertLess(aic(7.0, df, n), aicc(7.0, df, n))

    def test_aicc_approaches_aic(self) -> None:
        n = 10**7
        for df in (1.0, 3.0, 8.0):
            self.assertAlmostEqual(2.0, aicc(5.0, df, n) - aic(5.0, df, n) - n, places=4)

    def test_vectorized(self) -> None:
        rss = np.array([10.0, 5.0, 0.0, 2.0])
        df = np.array([0.0, 1.0, 2.0, 8.0])
        values = aicc(rss, df, 10)
        self.assertEqual((4,), values.shape)
        self.assertTrue(np.isfinite(values[:2]).all())
        self.assertEqual(math.inf, values[2])
        self.assertEqual(math.inf, values[3])

    def test_scale_shifts_values(self) -> None:
        rss = np.array([40.0, 20.0, 15.0, 14.5])
        df = np.arange(4.0) + 1
        for name in ("aicc", "aic", "bic"):
            a = criterion_values(name, rss, df, 30)
            b = criterion_values(name, 3.0 * rss, df, 30)
            np.testing.assert_allclose(b - a, 30 * math.log(3.0))
            self.assertEqual(int(np.argmin(a)), int(np.argmin(b)))


class ErrKlTest(unittest.TestCase):
    def test_exact_fit(self) -> None:
        n, sigma = 50, 2.0
        mu = np.linspace(-1, 1, n)
        trace = err_kl_estimate(mu[:, None], np.array([n * sigma**2]), mu, sigma)
        self.assertEqual("ErrKL", trace.criterion)
        self.assertAlmostEqual(n * math.log(sigma**2) + n, trace.values[0])

    def test_null_fit(self) -> None:
        n = 20
        mu = np.zeros(n)
        fitted = np.zeros((n, 1))
        trace = err_kl_estimate(fitted, np.array([8.0]), mu, 1.0)
        expected = n * math.log(8.0 / n) - n + n * n / 8.0 + n
        self.assertAlmostEqual(expected, trace.values[0])

    def test_zero_rss(self) -> None:
        mu = np.ones(5)
        trace = err_kl_estimate(np.ones((5, 2)), np.array([1.0, 0.0]), mu, 1.0)
        self.assertEqual(math.inf, trace.values[1])
        self.assertEqual(0, trace.argmin)


class TraceTest(unittest.TestCase):
    def test_ties_go_to_smallest(self) -> None:
        trace = CriterionTrace.from_values("Cp", "hdf", np.array([3.0, 1.0, 1.0, 2.0]))
        self.assertEqual(1, trace.argmin)

    def test_all_infinite(self) -> None:
        trace = CriterionTrace.from_values("AICc", "hdf", np.full(3, np.inf))
        self.assertEqual(-1, trace.argmin)

    def test_criterion_trace(self) -> None:
        rss = np.array([100.0, 50.0, 49.0])
        trace = criterion_trace("cp", rss, np.array([1.0, 2.0, 3.0]), 30, 1.0, "ndf")
        self.assertEqual("Cp", trace.criterion)
        self.assertEqual("ndf", trace.df_source)
        self.assertEqual(1, trace.argmin)
        with self.assertRaises(ValueError):
            criterion_trace("cp", rss, np.zeros(3), 30)
        with self.assertRaises(ValueError):
            criterion_trace("hqc", rss, np.zeros(3), 30)
