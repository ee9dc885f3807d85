import unittest

import numpy as np

from ..linalg import back_solve, center, ols, qr_append, RankDeficient, SingularSystem
from ..types import Dataset, InvalidData, QRState
from ._designs import random_dataset


class CenterTest(unittest.TestCase):
    def test_means_removed(self) -> None:
        data = random_dataset(20, 4, seed=1, intercept=3.0)
        c = center(data)
        np.testing.assert_allclose(c.Xc.mean(axis=0), 0.0, atol=1e-12)
        self.assertAlmostEqual(0.0, float(c.yc.mean()), places=12)
        np.testing.assert_allclose(c.Xc + c.xbar, data.X)
        self.assertAlmostEqual(float(data.y.mean()), c.ybar)

    def test_idempotent(self) -> None:
        c = center(random_dataset(25, 5, seed=4, intercept=-2.0))
        again = center(c.as_dataset())
        np.testing.assert_allclose(again.Xc, c.Xc, rtol=0, atol=1e-14)
        np.testing.assert_allclose(again.yc, c.yc, rtol=0, atol=1e-14)
        np.testing.assert_allclose(again.xbar, 0.0, atol=1e-14)

    def test_dataset_rejects_nan(self) -> None:
        X = np.ones((3, 2))
        X[1, 1] = np.nan
        with self.assertRaisesRegex(InvalidData, "row 1, column 1"):
            Dataset(X, np.zeros(3))

    def test_dataset_rejects_duplicate_names(self) -> None:
        with self.assertRaisesRegex(InvalidData, "Duplicate"):
            Dataset(np.eye(3)[:, :2], np.zeros(3), ["a", "a"])


class QrAppendTest(unittest.TestCase):
    def test_factorization(self) -> None:
        X = center(random_dataset(30, 5, seed=2)).Xc
        state = QRState.empty(30)
        for j in (3, 0, 4, 1, 2):
            state = qr_append(state, X[:, j], j)
        self.assertEqual((3, 0, 4, 1, 2), state.order)
        np.testing.assert_allclose(state.Q.T @ state.Q, np.eye(5), atol=1e-12)
        np.testing.assert_allclose(state.Q @ state.R, X[:, list(state.order)], atol=1e-10)
        np.testing.assert_allclose(np.tril(state.R, -1), 0.0)
        self.assertTrue(np.all(np.diag(state.R) > 0))

    def test_dependent_column(self) -> None:
        X = center(random_dataset(30, 2, seed=3)).Xc
        state = qr_append(QRState.empty(30), X[:, 0], 0)
        state = qr_append(state, X[:, 1], 1)
        with self.assertRaises(RankDeficient) as cm:
            qr_append(state, X[:, 0] - 2.0 * X[:, 1], 2)
        self.assertEqual(2, cm.exception.index)
        self.assertLess(cm.exception.relative_residual, 1e-10)
        self.assertEqual(2, state.k)

    def test_zero_column(self) -> None:
        with self.assertRaises(RankDeficient):
            qr_append(QRState.empty(4), np.zeros(4), 0)

    def test_duplicate_index(self) -> None:
        state = qr_append(QRState.empty(3), np.array([1.0, 0.0, -1.0]), 0)
        with self.assertRaisesRegex(ValueError, "already"):
            qr_append(state, np.array([0.0, 1.0, -1.0]), 0)

    def test_non_finite(self) -> None:
        with self.assertRaises(InvalidData):
            qr_append(QRState.empty(3), np.array([1.0, np.inf, 0.0]), 0)
        with self.assertRaises(InvalidData):
            qr_append(QRState.empty(3), np.ones(4), 0)


class BackSolveTest(unittest.TestCase):
    def test_matches_solve(self) -> None:
        R = np.array([[2.0, 1.0, -1.0], [0.0, 3.0, 0.5], [0.0, 0.0, 1.5]])
        g = np.array([1.0, -2.0, 3.0])
        np.testing.assert_allclose(np.linalg.solve(R, g), back_solve(R, g))
        G = np.column_stack([g, 2 * g])
        np.testing.assert_allclose(np.linalg.solve(R, G), back_solve(R, G))

    def test_zero_diagonal(self) -> None:
        R = np.array([[1.0, 2.0], [0.0, 0.0]])
        with self.assertRaisesRegex(SingularSystem, "position 1"):
            back_solve(R, np.ones(2))

    def test_empty(self) -> None:
        self.assertEqual((0, 3), back_solve(np.zeros((0, 0)), np.zeros((0, 3))).shape)


class OlsTest(unittest.TestCase):
    def test_matches_lstsq(self) -> None:
        data = random_dataset(40, 4, seed=4, beta=[1, -2])
        coef, rss = ols(data.X, data.y)
        expected, res, _, _ = np.linalg.lstsq(data.X, data.y, rcond=None)
        np.testing.assert_allclose(expected, coef, atol=1e-10)
        self.assertAlmostEqual(float(res[0]), rss, places=8)

    def test_no_columns(self) -> None:
        y = np.array([1.0, 2.0])
        coef, rss = ols(np.zeros((2, 0)), y)
        self.assertEqual(0, len(coef))
        self.assertEqual(5.0, rss)

    def test_rank_deficient(self) -> None:
        X = np.column_stack([np.arange(5.0), 2 * np.arange(5.0)])
        with self.assertRaises(SingularSystem):
            ols(X, np.ones(5))
        with self.assertRaises(SingularSystem):
            ols(np.ones((2, 3)), np.ones(2))
