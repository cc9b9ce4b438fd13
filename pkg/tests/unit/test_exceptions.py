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

import unittest


class TestVarselError(unittest.TestCase):
    @staticmethod
    def _get_target_class():
        from varsel.exceptions import VarselError

        return VarselError

    def _make_one(self, *args, **kw):
        return self._get_target_class()(*args, **kw)

    def test_ctor_defaults(self):
        error = self._make_one("boom")
        self.assertEqual(error.message, "boom")
        self.assertEqual(error.context, {})
        self.assertEqual(str(error), "boom")

    def test_str_with_context(self):
        error = self._make_one("boom", {"spec": "101", "iterations": 50})
        self.assertEqual(str(error), "boom (iterations=50, spec=101)")

    def test_hierarchy(self):
        from varsel import exceptions

        for name in ("RankDeficient", "DegenerateFit", "NotConverged"):
            self.assertTrue(issubclass(getattr(exceptions, name), exceptions.FitError))
        for name in (
            "FitError",
            "NonFiniteLoglik",
            "SpaceTooLarge",
            "AllModelsDegenerate",
            "FoldDegenerate",
            "TruthEmpty",
            "ConfigInvalid",
        ):
            self.assertTrue(
                issubclass(getattr(exceptions, name), self._get_target_class())
            )
        self.assertTrue(issubclass(exceptions.SeparationWarning, RuntimeWarning))
        self.assertTrue(issubclass(exceptions.MissingCellsWarning, UserWarning))


class TestConfigInvalid(unittest.TestCase):
    @staticmethod
    def _get_target_class():
        from varsel.exceptions import ConfigInvalid

        return ConfigInvalid

    def _make_one(self, *args, **kw):
        return self._get_target_class()(*args, **kw)

    def test_renders_one_line_per_error(self):
        error = self._make_one(
            [(3, "n: is required"), (None, "general problem")], source="bench.yaml"
        )
        self.assertEqual(
            str(error), "bench.yaml:3: n: is required\nbench.yaml: general problem"
        )
        self.assertEqual(len(error.errors), 2)
        self.assertEqual(error.source, "bench.yaml")

    def test_default_source(self):
        error = self._make_one([(1, "bad")])
        self.assertEqual(str(error), "<config>:1: bad")
