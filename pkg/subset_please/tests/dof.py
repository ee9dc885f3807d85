import math
import unittest
from unittest import mock

import numpy as np

from ..dof import (
    bdf_bootstrap,
    df_lagrangian,
    edf_monte_carlo,
    expected_size,
    hdf,
    hdf_null_closed_form,
    hdf_profile,
    ndf_profile,
    orthogonal_bs_fits,
    path_rule,
    RootFindingError,
)
from ..paths import boss_path
from ..simulation import gen_orthogonal_trig
from ..types import Dataset
from ._designs import orthonormal_dataset, orthonormal_design, random_dataset, SLOW


def _ols_rule(X: np.ndarray, y: np.ndarray) -> np.ndarray:
    ybar = y.mean()
    Xc = X - X.mean(axis=0)
    coef, *_ = np.linalg.lstsq(Xc, y - ybar, rcond=None)
    return np.column_stack([np.full(len(y), ybar), ybar + Xc @ coef])


class HdfTest(unittest.TestCase):
    def test_null_closed_form(self) -> None:
        p = 14
        for k in range(1, p):
            value, _ = hdf(k, np.zeros(p), 1.0)
            self.assertAlmostEqual(hdf_null_closed_form(k, p), value, places=6)

    def test_endpoints(self) -> None:
        self.assertEqual((0.0, math.inf), hdf(0, np.zeros(14), 1.0))
        value, lam = hdf(14, np.zeros(14), 1.0)
        self.assertAlmostEqual(14.0, value)
        self.assertEqual(0.0, lam)

    def test_exceeds_size_under_null(self) -> None:
        # Choosing the largest of pure-noise coordinates costs extra df.
        for k in range(1, 14):
            self.assertGreater(hdf(k, np.zeros(14), 1.0)[0], k)

    def test_strong_signal(self) -> None:
        xtmu = np.array([100.0] * 6 + [0.0] * 8)
        value, _ = hdf(6, xtmu, 1.0)
        self.assertAlmostEqual(6.0, value, places=4)

    def test_lambda_star_matches_expected_size(self) -> None:
        xtmu = np.array([3.0, -2.0, 0.5, 0.0, 1.0])
        profile = hdf_profile(xtmu, 1.0)
        self.assertEqual("hdf", profile.method)
        assert profile.lambda_star is not None
        self.assertTrue(np.all(np.diff(profile.lambda_star) < 0))
        for k in range(1, 5):
            self.assertAlmostEqual(
                k, expected_size(profile.lambda_star[k], xtmu, 1.0), places=6
            )
            self.assertAlmostEqual(
                profile.values[k], df_lagrangian(profile.lambda_star[k], xtmu, 1.0)
            )

    def test_lagrangian_at_zero(self) -> None:
        xtmu = np.array([1.0, 2.0, 0.0])
        self.assertAlmostEqual(3.0, expected_size(0.0, xtmu, 2.0))
        self.assertAlmostEqual(3.0, df_lagrangian(0.0, xtmu, 2.0))

    def test_bad_inputs(self) -> None:
        with self.assertRaises(ValueError):
            hdf(15, np.zeros(14), 1.0)
        with self.assertRaises(ValueError):
            hdf(1, np.zeros(14), 0.0)
        with self.assertRaises(ValueError):
            expected_size(-1.0, np.zeros(2), 1.0)

    def test_root_finding_failure(self) -> None:
        with mock.patch("subset_please.dof.HDF_MAX_ITER", 1):
            with self.assertRaisesRegex(RootFindingError, "did not converge"):
                hdf(3, np.zeros(14), 1.0)

    def test_ndf(self) -> None:
        path = boss_path(random_dataset(30, 5, seed=20))
        np.testing.assert_array_equal(np.arange(6), ndf_profile(path).values)


class CovarianceDfTest(unittest.TestCase):
    def test_least_squares_df_is_rank(self) -> None:
        data = random_dataset(40, 5, seed=21, beta=[1, 1])
        mu = data.X @ np.r_[1.0, 1.0, 0.0, 0.0, 0.0]
        profile = edf_monte_carlo(_ols_rule, data.X, mu, 1.0, reps=2000, seed=3)
        self.assertEqual("edf", profile.method)
        self.assertEqual(0.0, profile.values[0])
        self.assertAlmostEqual(5.0, profile.values[1], delta=0.5)
        assert profile.std_errors is not None
        self.assertGreater(profile.std_errors[1], 0.0)
        self.assertLess(profile.std_errors[1], 0.2)

    def test_thread_count_does_not_matter(self) -> None:
        X = orthonormal_design(40, 6, seed=22)
        mu = X @ np.r_[2.0, -1.0, 0, 0, 0, 0]
        a = edf_monte_carlo(orthogonal_bs_fits, X, mu, 1.0, reps=150, seed=5, threads=1)
        b = edf_monte_carlo(orthogonal_bs_fits, X, mu, 1.0, reps=150, seed=5, threads=3)
        np.testing.assert_array_equal(a.values, b.values)
        c = edf_monte_carlo(orthogonal_bs_fits, X, mu, 1.0, reps=150, seed=6, threads=1)
        self.assertFalse(np.array_equal(a.values, c.values))

    def test_fast_rule_matches_path(self) -> None:
        data = orthonormal_dataset(40, 6, seed=23, beta=[2, -1])
        np.testing.assert_allclose(
            boss_path(data).predict(data.X), orthogonal_bs_fits(data.X, data.y), atol=1e-9
        )

    def test_bootstrap(self) -> None:
        data = orthonormal_dataset(40, 6, seed=24, beta=[2, -1])
        mu_hat = orthogonal_bs_fits(data.X, data.y)[:, -1]
        profile = bdf_bootstrap(orthogonal_bs_fits, data, mu_hat, 1.0, B=100, seed=1)
        self.assertEqual("bdf", profile.method)
        self.assertEqual(7, len(profile.values))
        self.assertEqual(0.0, profile.values[0])
        self.assertTrue(np.all((profile.values >= 0) & (profile.values <= 40)))
        # The full model is least squares on all six columns.
        self.assertAlmostEqual(6.0, profile.values[-1], delta=1.5)

    def test_rejects_changing_width(self) -> None:
        def rule(X: np.ndarray, y: np.ndarray) -> np.ndarray:
            width = 2 if y[0] > 0 else 3
            return np.zeros((len(y), width))

        X = np.eye(4)[:, :2]
        with self.assertRaisesRegex(ValueError, "models"):
            edf_monte_carlo(rule, X, np.zeros(4), 1.0, reps=200, seed=0)

    def test_needs_two_reps(self) -> None:
        with self.assertRaises(ValueError):
            edf_monte_carlo(_ols_rule, np.eye(3), np.zeros(3), 1.0, reps=1)


class DatasetPathRuleTest(unittest.TestCase):
    def test_dataset_rule(self) -> None:
        data = random_dataset(30, 4, seed=25, beta=[1])
        fits = path_rule(boss_path)(data.X, data.y)
        self.assertEqual((30, 5), fits.shape)
        np.testing.assert_allclose(fits[:, 0], data.y.mean())
        np.testing.assert_allclose(fits, boss_path(Dataset(data.X, data.y)).predict(data.X))


class NullHdfTest(unittest.TestCase):
    def test_closed_form_across_dimensions(self) -> None:
        for p in (14, 30, 60, 180):
            for k in range(1, p + 1):
                value, _ = hdf(k, np.zeros(p), 1.0)
                self.assertLess(abs(value - hdf_null_closed_form(k, p)), 1e-6, (p, k))

    def test_boundaries(self) -> None:
        for p in (14, 30, 60, 180):
            profile = hdf_profile(np.zeros(p), 1.0)
            self.assertEqual(0.0, profile.values[0])
            self.assertLess(abs(profile.values[p] - p), 1e-8)

    def test_expected_size_strictly_decreasing(self) -> None:
        for xtmu in (np.zeros(10), np.array([3.0, -2.0, 0.5, 0.0, 1.0])):
            grid = np.linspace(0.0, 20.0, 200)
            sizes = [expected_size(lam, xtmu, 1.0) for lam in grid]
            self.assertTrue(np.all(np.diff(sizes) < 0))
            self.assertAlmostEqual(len(xtmu), sizes[0])

    def test_edf_matches_order_statistics(self) -> None:
        p = 14
        X = gen_orthogonal_trig(200, p)
        profile = edf_monte_carlo(
            orthogonal_bs_fits, X, np.zeros(200), 1.0, reps=1000, seed=8
        )
        # sum of the k largest of p independent chi-square(1) draws
        draws = np.random.default_rng(80).chisquare(1, size=(1000, p))
        tops = np.cumsum(-np.sort(-draws, axis=1), axis=1)
        oracle = tops.mean(axis=0)
        oracle_se = tops.std(axis=0, ddof=1) / math.sqrt(1000)
        assert profile.std_errors is not None
        for k in range(1, p + 1):
            se = math.hypot(profile.std_errors[k], oracle_se[k - 1])
            self.assertLess(abs(profile.values[k] - oracle[k - 1]), 3 * se, k)

    @unittest.skipUnless(SLOW, "set SUBSET_PLEASE_SLOW=1")
    def test_edf_over_hdf_tends_to_one(self) -> None:
        p = 180
        X = gen_orthogonal_trig(200, p)
        edf = edf_monte_carlo(
            orthogonal_bs_fits, X, np.zeros(200), 1.0, reps=1000, seed=9, threads=4
        )
        hdfs = hdf_profile(np.zeros(p), 1.0)
        for k in range(int(np.ceil(0.8 * p)), p + 1):
            ratio = edf.values[k] / hdfs.values[k]
            self.assertGreaterEqual(ratio, 0.97, k)
            self.assertLessEqual(ratio, 1.03, k)
