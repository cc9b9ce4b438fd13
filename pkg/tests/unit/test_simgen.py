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


class TestStudy(unittest.TestCase):
    @staticmethod
    def _get_target_class():
        from varsel.simgen import Study

        return Study

    def test_from_name(self):
        klass = self._get_target_class()
        self.assertIs(klass.from_name("S1_equicorr"), klass.S1_EQUICORR)
        self.assertIs(klass.from_name("s2"), klass.S2_AR1)
        self.assertIs(klass.from_name(1), klass.S1_EQUICORR)
        self.assertIs(klass.from_name(klass.S2_AR1), klass.S2_AR1)
        with self.assertRaises(ValueError):
            klass.from_name("s3")

    def test_defaults(self):
        klass = self._get_target_class()
        self.assertEqual(klass.S1_EQUICORR.default_p, 6)
        self.assertEqual(klass.S2_AR1.default_p, 50)
        self.assertEqual(klass.S1_EQUICORR.default_support(6).bits, "111000")
        support = klass.S2_AR1.default_support(50)
        self.assertEqual(support.size, 25)
        self.assertEqual(support.columns, tuple(range(0, 50, 2)))


class TestSimSetting(unittest.TestCase):
    @staticmethod
    def _get_target_class():
        from varsel.simgen import SimSetting

        return SimSetting

    def test_study1_factory(self):
        from varsel.family import Family

        setting = self._get_target_class().study1(n=100, rho=0.5, sigma2=16.0)
        self.assertEqual(setting.p, 6)
        self.assertIs(setting.family, Family.GAUSSIAN)
        self.assertEqual(setting.beta_value, 1.0)
        self.assertEqual(setting.beta0, 1.0)
        self.assertEqual(setting.cohens_f, 0.25)
        self.assertEqual(setting.beta().tolist(), [1.0, 1.0, 1.0, 0.0, 0.0, 0.0])

    def test_study2_glm_scale(self):
        klass = self._get_target_class()
        poisson = klass.study2(n=200, rho=0.0, sigma2=1.0, family="poisson")
        self.assertEqual(poisson.p, 50)
        self.assertEqual(poisson.beta_value, 0.3)
        gaussian = klass.study2(n=200, rho=0.0, sigma2=6.25)
        self.assertEqual(gaussian.beta_value, 1.0)
        explicit = klass.study2(
            n=200, rho=0.0, sigma2=1.0, family="bernoulli", beta_scale=0.5
        )
        self.assertEqual(explicit.beta_value, 0.5)

    def test_cohens_f_undefined(self):
        setting = self._get_target_class().study1(
            n=50, rho=0.0, sigma2=0.0, family="bernoulli"
        )
        self.assertIsNone(setting.cohens_f)

    def test_validation(self):
        from varsel.dataset import ModelSpec

        klass = self._get_target_class()
        with self.assertRaises(ValueError):
            klass.study1(n=50, rho=1.0, sigma2=1.0)
        with self.assertRaises(ValueError):
            klass.study1(n=50, rho=-0.1, sigma2=1.0)
        with self.assertRaises(ValueError):
            klass.study1(n=50, rho=0.0, sigma2=0.0)
        with self.assertRaises(ValueError):
            klass.study1(n=0, rho=0.0, sigma2=1.0)
        with self.assertRaises(ValueError):
            klass.study1(n=50, rho=0.0, sigma2=1.0, seed=-1)
        with self.assertRaises(ValueError):
            klass(
                study="s1",
                family="gaussian",
                n=10,
                p=6,
                rho=0.0,
                sigma2=1.0,
                true_support=ModelSpec.from_indices(5, [1]),
            )

    def test_replace(self):
        setting = self._get_target_class().study1(n=50, rho=0.0, sigma2=1.0)
        other = setting.replace(seed=4)
        self.assertEqual(other.seed, 4)
        self.assertEqual(setting.seed, 0)


class Test_mix_seed(unittest.TestCase):
    def _call_fut(self, *keys):
        from varsel.simgen import mix_seed

        return mix_seed(*keys)

    def test_stable_and_distinct(self):
        self.assertEqual(self._call_fut(1, 2, 3), self._call_fut(1, 2, 3))
        seeds = {self._call_fut(0, cell, rep) for cell in range(5) for rep in range(5)}
        self.assertEqual(len(seeds), 25)


class Test_gen_design_equicorr(unittest.TestCase):
    def _call_fut(self, *args):
        from varsel.simgen import gen_design_equicorr

        return gen_design_equicorr(*args)

    def test_moments(self):
        import numpy as np

        X = self._call_fut(20000, 6, 0.5, np.random.default_rng(0))
        self.assertEqual(X.shape, (20000, 6))
        corr = np.corrcoef(X, rowvar=False)
        off_diagonal = corr[~np.eye(6, dtype=bool)]
        self.assertTrue(np.all(np.abs(off_diagonal - 0.5) < 0.03))
        self.assertTrue(np.all(np.abs(X.var(axis=0) - 1.0) < 0.05))

    def test_independent(self):
        import numpy as np

        X = self._call_fut(20000, 4, 0.0, np.random.default_rng(1))
        corr = np.corrcoef(X, rowvar=False)
        self.assertTrue(np.all(np.abs(corr[~np.eye(4, dtype=bool)]) < 0.03))

    def test_invalid_rho(self):
        import numpy as np

        with self.assertRaises(ValueError):
            self._call_fut(10, 3, 1.0, np.random.default_rng(0))


class Test_gen_design_ar1(unittest.TestCase):
    def _call_fut(self, *args):
        from varsel.simgen import gen_design_ar1

        return gen_design_ar1(*args)

    def test_moments(self):
        import numpy as np

        rho = 0.75
        X = self._call_fut(20000, 10, rho, np.random.default_rng(2))
        corr = np.corrcoef(X, rowvar=False)
        for lag in (1, 2, 3):
            for k in range(10 - lag):
                self.assertAlmostEqual(corr[k, k + lag], rho ** lag, delta=0.03)
        stationary = 1.0 / (1.0 - rho ** 2)
        self.assertTrue(np.all(np.abs(X.var(axis=0) - stationary) < 0.15))

    def test_zero_rho_is_white_noise(self):
        import numpy as np

        X = self._call_fut(20000, 5, 0.0, np.random.default_rng(3))
        self.assertTrue(np.all(np.abs(X.var(axis=0) - 1.0) < 0.05))


class Test_gen_response(unittest.TestCase):
    def _call_fut(self, *args):
        from varsel.simgen import gen_response

        return gen_response(*args)

    def _setting(self, **kw):
        from varsel.simgen import SimSetting

        kw.setdefault("sigma2", 16.0)
        return SimSetting.study1(n=20000, rho=0.0, **kw)

    def test_gaussian_noise_variance(self):
        import numpy as np

        setting = self._setting()
        rng = np.random.default_rng(4)
        X = rng.standard_normal((setting.n, setting.p))
        y = self._call_fut(X, setting, rng)
        residual = y - 1.0 - X @ setting.beta()
        self.assertAlmostEqual(residual.var() / 16.0, 1.0, delta=0.05)

    def test_bernoulli_mean(self):
        import numpy as np

        setting = self._setting(family="bernoulli")
        rng = np.random.default_rng(5)
        X = rng.standard_normal((setting.n, setting.p))
        y = self._call_fut(X, setting, rng)
        self.assertTrue(set(np.unique(y)) <= {0.0, 1.0})
        expected = np.mean(1.0 / (1.0 + np.exp(-(1.0 + X @ setting.beta()))))
        self.assertAlmostEqual(y.mean(), expected, delta=0.02)

    def test_poisson_mean(self):
        import numpy as np

        setting = self._setting(family="poisson", beta_scale=0.3)
        rng = np.random.default_rng(6)
        X = rng.standard_normal((setting.n, setting.p))
        y = self._call_fut(X, setting, rng)
        expected = np.mean(np.exp(1.0 + X @ setting.beta()))
        self.assertAlmostEqual(y.mean() / expected, 1.0, delta=0.05)

    def test_shape_mismatch(self):
        import numpy as np

        setting = self._setting()
        with self.assertRaises(ValueError):
            self._call_fut(np.zeros((10, 6)), setting, np.random.default_rng(0))


class Test_simulate(unittest.TestCase):
    def _call_fut(self, setting):
        from varsel.simgen import simulate

        return simulate(setting)

    def test_deterministic(self):
        import numpy as np
        from varsel.simgen import SimSetting

        setting = SimSetting.study2(n=200, rho=0.5, sigma2=6.25, seed=11)
        first = self._call_fut(setting)
        second = self._call_fut(setting)
        np.testing.assert_array_equal(first.X, second.X)
        np.testing.assert_array_equal(first.y, second.y)
        third = self._call_fut(setting.replace(seed=12))
        self.assertFalse(np.array_equal(first.y, third.y))

    def test_metadata(self):
        from varsel.simgen import SimSetting

        setting = SimSetting.study1(n=50, rho=0.25, sigma2=16.0, seed=3)
        data = self._call_fut(setting)
        self.assertEqual((data.n, data.p), (50, 6))
        metadata = data.metadata
        self.assertEqual(metadata["study"], "S1_equicorr")
        self.assertEqual(metadata["family"], "gaussian")
        self.assertEqual(metadata["cohens_f"], 0.25)
        self.assertEqual(metadata["true_support"], "111000")
        self.assertEqual(metadata["seed"], 3)
        self.assertEqual(metadata["n_clamped"], 0)

    def test_poisson_clamp_is_logged(self):
        from varsel.simgen import POISSON_ETA_CAP
        from varsel.simgen import SimSetting

        setting = SimSetting.study1(
            n=200, rho=0.0, sigma2=1.0, family="poisson", beta_scale=5.0
        )
        with self.assertLogs("varsel.simgen", level="WARNING"):
            data = self._call_fut(setting)
        self.assertGreater(data.metadata["n_clamped"], 0)
        self.assertLess(data.y.max(), 2.0 * math.exp(POISSON_ETA_CAP))
        self.assertEqual(POISSON_ETA_CAP, 8.0)

    def test_bernoulli_has_both_classes(self):
        from varsel.simgen import SimSetting

        setting = SimSetting.study1(
            n=200, rho=0.5, sigma2=1.0, family="bernoulli", seed=7
        )
        data = self._call_fut(setting)
        self.assertTrue(0.0 < data.y.mean() < 1.0)
