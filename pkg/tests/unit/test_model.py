# Copyright 2026 The varsel Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math
import unittest
import warnings


class Test_fit_lm(unittest.TestCase):
    def _call_fut(self, data, spec):
        from varsel.model import fit_lm

        return fit_lm(data, spec)

    def test_matches_least_squares(self):
        import numpy as np
        from varsel.dataset import ModelSpec

        data = _gaussian_data(n=60, p=4, seed=1)
        spec = ModelSpec.from_indices(4, [1, 3])
        fitted = self._call_fut(data, spec)

        Z = np.column_stack([np.ones(60), data.X[:, [0, 2]]])
        expected, _, _, _ = np.linalg.lstsq(Z, data.y, rcond=None)
        rss = float(np.sum((data.y - Z @ expected) ** 2))
        self.assertAlmostEqual(fitted.beta0, expected[0], places=10)
        np.testing.assert_allclose(fitted.beta, expected[1:], atol=1e-10)
        self.assertAlmostEqual(fitted.sigma2_hat, rss / 60, places=10)
        self.assertAlmostEqual(
            fitted.loglik,
            -30.0 * (math.log(2.0 * math.pi) + math.log(rss / 60) + 1.0),
            places=8,
        )
        self.assertEqual(fitted.k, 4)
        self.assertTrue(fitted.converged)
        self.assertEqual(fitted.n_iterations, 0)

    def test_null_model(self):
        import numpy as np

        data = _gaussian_data(n=30, p=2, seed=2)
        fitted = self._call_fut(data, data.null_spec())
        self.assertAlmostEqual(fitted.beta0, float(np.mean(data.y)), places=12)
        self.assertEqual(fitted.beta.size, 0)
        self.assertEqual(fitted.k, 2)

    def test_three_point_line(self):
        import numpy as np
        from varsel.dataset import Dataset

        data = Dataset(np.array([1.0, 2.0, 2.0]), np.array([[1.0], [2.0], [3.0]]))
        fitted = self._call_fut(data, data.full_spec())
        self.assertAlmostEqual(fitted.beta0, 2.0 / 3.0, places=12)
        self.assertAlmostEqual(fitted.beta[0], 0.5, places=12)
        self.assertAlmostEqual(3.0 * fitted.sigma2_hat, 1.0 / 6.0, places=12)

    def test_residuals_orthogonal_to_design(self):
        import numpy as np
        from varsel.dataset import ModelSpec

        data = _gaussian_data(n=80, p=5, seed=5)
        for mask in range(1 << 5):
            spec = ModelSpec(5, mask)
            fitted = self._call_fut(data, spec)
            residual = data.y - fitted.linear_predictor(data.X)
            dots = data.design(spec).T @ residual
            self.assertLessEqual(float(np.max(np.abs(dots))), 1e-8 * data.n)

    def test_coefficients_and_linear_predictor(self):
        from varsel.dataset import ModelSpec

        data = _gaussian_data(n=40, p=3, seed=3)
        fitted = self._call_fut(data, ModelSpec.from_indices(3, [2]))
        coefficients = fitted.coefficients()
        self.assertEqual(coefficients[0], 0.0)
        self.assertEqual(coefficients[2], 0.0)
        self.assertEqual(coefficients[1], fitted.beta[0])
        eta = fitted.linear_predictor(data.X)
        self.assertAlmostEqual(eta[0], fitted.beta0 + fitted.beta[0] * data.X[0, 1])

    def test_rank_deficient(self):
        import numpy as np
        from varsel.dataset import Dataset
        from varsel.dataset import ModelSpec
        from varsel.exceptions import RankDeficient

        rng = np.random.default_rng(4)
        x = rng.normal(size=20)
        data = Dataset(rng.normal(size=20), np.column_stack([x, 2.0 * x]))
        with self.assertRaises(RankDeficient):
            self._call_fut(data, ModelSpec.full(2))

    def test_constant_column_is_rank_deficient(self):
        import numpy as np
        from varsel.dataset import Dataset
        from varsel.dataset import ModelSpec
        from varsel.exceptions import RankDeficient

        rng = np.random.default_rng(5)
        data = Dataset(rng.normal(size=10), np.full((10, 1), 3.0))
        with self.assertRaises(RankDeficient):
            self._call_fut(data, ModelSpec.full(1))

    def test_degenerate_exact_fit(self):
        import numpy as np
        from varsel.dataset import Dataset
        from varsel.dataset import ModelSpec
        from varsel.exceptions import DegenerateFit

        x = np.arange(8.0)
        data = Dataset(1.0 + 2.0 * x, x[:, None])
        with self.assertRaises(DegenerateFit):
            self._call_fut(data, ModelSpec.full(1))

    def test_wrong_family(self):
        data = _bernoulli_data(n=30, seed=0)
        with self.assertRaises(ValueError):
            self._call_fut(data, data.null_spec())


class Test_fit_glm(unittest.TestCase):
    def _call_fut(self, data, spec, **kw):
        from varsel.model import fit_glm

        return fit_glm(data, spec, **kw)

    def test_bernoulli_null_matches_logit_of_mean(self):
        import numpy as np

        data = _bernoulli_data(n=80, seed=6)
        ybar = float(np.mean(data.y))
        fitted = self._call_fut(data, data.null_spec())
        self.assertAlmostEqual(fitted.beta0, math.log(ybar / (1.0 - ybar)), delta=1e-8)
        self.assertTrue(fitted.converged)
        self.assertEqual(fitted.k, 1)
        self.assertIsNone(fitted.sigma2_hat)

    def test_poisson_null_matches_log_of_mean(self):
        import numpy as np

        data = _poisson_data(n=80, seed=7)
        fitted = self._call_fut(data, data.null_spec())
        expected = math.log(float(np.mean(data.y)))
        self.assertAlmostEqual(fitted.beta0, expected, delta=1e-8)
        self.assertGreater(fitted.n_iterations, 0)

    def test_poisson_recovers_coefficients(self):
        import numpy as np
        from varsel.dataset import Dataset
        from varsel.dataset import ModelSpec

        rng = np.random.default_rng(8)
        X = rng.normal(size=(4000, 2))
        y = rng.poisson(np.exp(0.5 + 0.3 * X[:, 0])).astype(float)
        data = Dataset(y, X, family="poisson")
        fitted = self._call_fut(data, ModelSpec.full(2))
        self.assertAlmostEqual(fitted.beta0, 0.5, delta=0.05)
        self.assertAlmostEqual(fitted.beta[0], 0.3, delta=0.05)
        self.assertAlmostEqual(fitted.beta[1], 0.0, delta=0.05)

    def test_score_equations_hold(self):
        import numpy as np
        from varsel.dataset import ModelSpec

        data = _bernoulli_data(n=200, seed=9)
        fitted = self._call_fut(data, ModelSpec.full(2))
        mu = data.family.inverse_link(fitted.linear_predictor(data.X))
        score = data.design(ModelSpec.full(2)).T @ (data.y - mu)
        np.testing.assert_allclose(score, np.zeros(3), atol=1e-6)

    def test_loglik_agrees_with_loglik_helper(self):
        from varsel.dataset import ModelSpec
        from varsel.model import loglik

        data = _poisson_data(n=100, seed=10)
        spec = ModelSpec.full(2)
        fitted = self._call_fut(data, spec)
        self.assertAlmostEqual(
            loglik(data, spec, fitted.beta0, fitted.beta), fitted.loglik, places=10
        )

    def test_matches_derivative_free_optimizer(self):
        import numpy as np
        from scipy import optimize
        from varsel.model import loglik

        for data in (_bernoulli_data(n=200, seed=20), _poisson_data(n=150, seed=21)):
            spec = data.full_spec()
            fitted = self._call_fut(data, spec)
            found = optimize.minimize(
                lambda b: -loglik(data, spec, b[0], b[1:]),
                np.zeros(3),
                method="Nelder-Mead",
                options={
                    "xatol": 1e-10,
                    "fatol": 1e-12,
                    "maxiter": 20000,
                    "maxfev": 20000,
                },
            )
            self.assertAlmostEqual(fitted.loglik, -found.fun, delta=1e-6)
            self.assertGreaterEqual(fitted.loglik, -found.fun - 1e-9)
            np.testing.assert_allclose(
                np.concatenate([[fitted.beta0], fitted.beta]), found.x, atol=1e-4
            )

    def test_separation_warns(self):
        import numpy as np
        from varsel.dataset import Dataset
        from varsel.dataset import ModelSpec
        from varsel.exceptions import SeparationWarning

        x = np.array([-3.0, -2.0, -1.0, 1.0, 2.0, 3.0])
        data = Dataset((x > 0).astype(float), x[:, None], family="bernoulli")
        with self.assertWarns(SeparationWarning):
            fitted = self._call_fut(data, ModelSpec.full(1))
        self.assertFalse(fitted.converged)

    def test_separation_silent_when_asked(self):
        import numpy as np
        from varsel.dataset import Dataset
        from varsel.dataset import ModelSpec

        x = np.array([-3.0, -2.0, -1.0, 1.0, 2.0, 3.0])
        data = Dataset((x > 0).astype(float), x[:, None], family="bernoulli")
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            fitted = self._call_fut(data, ModelSpec.full(1), warn=False)
        self.assertFalse(fitted.converged)

    def test_rank_deficient(self):
        import numpy as np
        from varsel.dataset import Dataset
        from varsel.dataset import ModelSpec
        from varsel.exceptions import RankDeficient

        rng = np.random.default_rng(11)
        x = rng.normal(size=30)
        y = (rng.random(30) < 0.5).astype(float)
        data = Dataset(y, np.column_stack([x, x]), family="bernoulli")
        with self.assertRaises(RankDeficient):
            self._call_fut(data, ModelSpec.full(2))

    def test_not_converged(self):
        import mock
        from varsel.exceptions import NotConverged

        data = _poisson_data(n=50, seed=12)
        with mock.patch("varsel.model.IRLS_MAX_ITER", 1):
            with self.assertRaises(NotConverged):
                self._call_fut(data, data.full_spec())

    def test_wrong_family(self):
        data = _gaussian_data(n=10, p=1, seed=0)
        with self.assertRaises(ValueError):
            self._call_fut(data, data.null_spec())


class Test_fit(unittest.TestCase):
    def test_dispatches_by_family(self):
        from varsel.model import fit

        gaussian = fit(_gaussian_data(n=20, p=1, seed=0), _null(1))
        poisson = fit(_poisson_data(n=20, seed=0), _null(2))
        self.assertIsNotNone(gaussian.sigma2_hat)
        self.assertIsNone(poisson.sigma2_hat)

    def test_nested_models_never_lose_likelihood(self):
        from varsel.dataset import ModelSpec
        from varsel.model import fit

        for data in (
            _gaussian_data(n=60, p=4, seed=30),
            _bernoulli_data(n=200, seed=31),
            _poisson_data(n=150, seed=32),
        ):
            p = data.p
            fits = dict(
                (mask, fit(data, ModelSpec(p, mask)).loglik) for mask in range(1 << p)
            )
            for small in fits:
                for large in fits:
                    if small & ~large == 0:
                        self.assertGreaterEqual(fits[large], fits[small] - 1e-8)


class Test_loglik(unittest.TestCase):
    def test_gaussian_profile(self):
        from varsel.model import fit_lm
        from varsel.model import loglik

        data = _gaussian_data(n=50, p=2, seed=13)
        spec = data.full_spec()
        fitted = fit_lm(data, spec)
        at_mle = loglik(data, spec, fitted.beta0, fitted.beta)
        elsewhere = loglik(data, spec, fitted.beta0 + 0.5, fitted.beta)
        self.assertAlmostEqual(at_mle, fitted.loglik, places=8)
        self.assertLess(elsewhere, at_mle)

    def test_zero_residual(self):
        import numpy as np
        from varsel.dataset import Dataset
        from varsel.model import loglik

        x = np.arange(5.0)
        data = Dataset(2.0 * x, x[:, None])
        self.assertEqual(loglik(data, data.full_spec(), 0.0, [2.0]), math.inf)

    def test_bernoulli_even_odds(self):
        import numpy as np
        from varsel.dataset import Dataset
        from varsel.model import loglik

        y = np.array([0.0, 1.0, 1.0, 0.0, 1.0])
        data = Dataset(y, np.arange(5.0)[:, None], family="bernoulli")
        self.assertAlmostEqual(
            loglik(data, data.null_spec(), 0.0, []), 5.0 * math.log(0.5), places=12
        )

    def test_poisson_unit_rate(self):
        import numpy as np
        from varsel.dataset import Dataset
        from varsel.model import loglik

        data = Dataset(np.zeros(2), np.array([[1.0], [2.0]]), family="poisson")
        self.assertAlmostEqual(loglik(data, data.full_spec(), 0.0, [0.0]), -2.0)

    def test_poisson_factorial_term_does_not_change_selection(self):
        import mock
        import numpy as np
        from scipy import special
        from varsel.search import exhaustive_search

        data = _poisson_data(n=120, seed=33)
        constant = float(np.sum(special.gammaln(data.y + 1.0)))
        self.assertGreater(constant, 0.0)
        for criterion in ("AIC", "BIC"):
            kept = exhaustive_search(data, criterion)
            with mock.patch(
                "varsel.family.special.gammaln", side_effect=np.zeros_like
            ):
                dropped = exhaustive_search(data, criterion)
            self.assertEqual(kept.spec, dropped.spec)
            self.assertAlmostEqual(
                kept.best_score, dropped.best_score + 2.0 * constant, places=6
            )

    def test_dimension_mismatch(self):
        from varsel.model import loglik

        data = _gaussian_data(n=10, p=2, seed=0)
        with self.assertRaises(ValueError):
            loglik(data, data.full_spec(), 0.0, [1.0])


class Test_deviance(unittest.TestCase):
    def test_by_name(self):
        from varsel.model import deviance

        self.assertEqual(deviance("gaussian", [1.0, 3.0], [1.0, 1.0]), 4.0)


def _null(p):
    from varsel.dataset import ModelSpec

    return ModelSpec.null(p)


def _gaussian_data(n, p, seed):
    import numpy as np
    from varsel.dataset import Dataset

    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, p))
    y = 1.0 + X @ np.linspace(1.0, 0.0, p) + rng.normal(size=n)
    return Dataset(y, X)


def _bernoulli_data(n, seed):
    import numpy as np
    from varsel.dataset import Dataset

    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, 2))
    prob = 1.0 / (1.0 + np.exp(-(0.2 + 0.8 * X[:, 0])))
    y = (rng.random(n) < prob).astype(float)
    return Dataset(y, X, family="bernoulli")


def _poisson_data(n, seed):
    import numpy as np
    from varsel.dataset import Dataset

    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, 2))
    y = rng.poisson(np.exp(0.5 + 0.4 * X[:, 0])).astype(float)
    return Dataset(y, X, family="poisson")
