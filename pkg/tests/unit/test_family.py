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


class TestFamily(unittest.TestCase):
    @staticmethod
    def _get_target_class():
        from varsel.family import Family

        return Family

    def test_from_name(self):
        klass = self._get_target_class()
        self.assertIs(klass.from_name("Bernoulli"), klass.BERNOULLI)
        self.assertIs(klass.from_name("POISSON"), klass.POISSON)
        self.assertIs(klass.from_name(klass.GAUSSIAN), klass.GAUSSIAN)

    def test_from_name_unknown(self):
        with self.assertRaises(ValueError):
            self._get_target_class().from_name("gamma")

    def test_link_and_extra_params(self):
        klass = self._get_target_class()
        self.assertEqual(klass.GAUSSIAN.link_name, "identity")
        self.assertEqual(klass.BERNOULLI.link_name, "logit")
        self.assertEqual(klass.POISSON.link_name, "log")
        self.assertEqual(klass.GAUSSIAN.extra_params, 1)
        self.assertEqual(klass.BERNOULLI.extra_params, 0)

    def test_inverse_link(self):
        klass = self._get_target_class()
        self.assertEqual(float(klass.BERNOULLI.inverse_link(0.0)), 0.5)
        self.assertEqual(float(klass.POISSON.inverse_link(0.0)), 1.0)
        self.assertEqual(float(klass.GAUSSIAN.inverse_link(2.5)), 2.5)

    def test_variance(self):
        klass = self._get_target_class()
        self.assertEqual(float(klass.BERNOULLI.variance(0.5)), 0.25)
        self.assertEqual(float(klass.POISSON.variance(3.0)), 3.0)
        self.assertEqual(float(klass.GAUSSIAN.variance(3.0)), 1.0)

    def test_validate_response(self):
        klass = self._get_target_class()
        klass.BERNOULLI.validate_response([0.0, 1.0, 1.0])
        klass.POISSON.validate_response([0.0, 3.0, 7.0])
        with self.assertRaises(ValueError):
            klass.BERNOULLI.validate_response([0.0, 2.0])
        with self.assertRaises(ValueError):
            klass.POISSON.validate_response([1.5])
        with self.assertRaises(ValueError):
            klass.POISSON.validate_response([-1.0])
        with self.assertRaises(ValueError):
            klass.GAUSSIAN.validate_response([float("nan")])

    def test_glm_loglik_poisson(self):
        klass = self._get_target_class()
        # y = 2, eta = 0: 2 * 0 - 1 - log(2!)
        value = klass.POISSON.glm_loglik([2.0], [0.0])
        self.assertAlmostEqual(value, -1.0 - math.log(2.0), places=12)

    def test_glm_loglik_bernoulli(self):
        klass = self._get_target_class()
        value = klass.BERNOULLI.glm_loglik([1.0, 0.0], [0.0, 0.0])
        self.assertAlmostEqual(value, 2.0 * math.log(0.5), places=12)

    def test_glm_loglik_bernoulli_clamped(self):
        klass = self._get_target_class()
        value = klass.BERNOULLI.glm_loglik([0.0], [800.0])
        self.assertTrue(math.isfinite(value))

    def test_glm_loglik_gaussian(self):
        with self.assertRaises(ValueError):
            self._get_target_class().GAUSSIAN.glm_loglik([1.0], [1.0])

    def test_deviance(self):
        klass = self._get_target_class()
        self.assertEqual(klass.GAUSSIAN.deviance([1.0, 2.0], [0.0, 0.0]), 5.0)
        self.assertEqual(klass.POISSON.deviance([2.0, 3.0], [2.0, 3.0]), 0.0)
        # y = 0 contributes 2 * mu
        self.assertAlmostEqual(klass.POISSON.deviance([0.0], [1.5]), 3.0, places=12)
        self.assertAlmostEqual(
            klass.BERNOULLI.deviance([1.0], [0.5]), 2.0 * math.log(2.0), places=12
        )
