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

"""Variable selection for linear and generalized linear models.

The main concepts are:

- :class:`~varsel.dataset.Dataset` holds a response, a regressor matrix and
  a :class:`~varsel.family.Family` (Gaussian, Bernoulli or Poisson).
- :class:`~varsel.dataset.ModelSpec` is a candidate model: a bit set of
  included regressors, the intercept always included.
- :func:`~varsel.model.fit` returns a :class:`~varsel.model.FittedModel`
  scored by a :class:`~varsel.criteria.Criterion` (AIC or BIC).
- :mod:`varsel.search` explores the model space exhaustively, stepwise or
  with a genetic algorithm; :mod:`varsel.lasso` walks the LASSO path.
- :class:`~varsel.selector.Selector` runs any named method on a dataset.
- :mod:`varsel.simgen`, :mod:`varsel.metrics` and :mod:`varsel.bench`
  make up the Monte-Carlo benchmark harness.
"""

from varsel.version import __version__
from varsel.criteria import Criterion
from varsel.dataset import Dataset
from varsel.dataset import ModelSpec
from varsel.family import Family
from varsel.lasso import cv_select
from varsel.lasso import lasso_path
from varsel.lasso import lasso_select_ic
from varsel.model import FittedModel
from varsel.model import fit
from varsel.search import GAConfig
from varsel.search import SearchResult
from varsel.search import auto_search
from varsel.search import exhaustive_search
from varsel.search import ga_search
from varsel.search import stepwise_search
from varsel.selector import Selector


__all__ = [
    "__version__",
    "Criterion",
    "Dataset",
    "FittedModel",
    "Family",
    "GAConfig",
    "ModelSpec",
    "SearchResult",
    "Selector",
    "auto_search",
    "cv_select",
    "exhaustive_search",
    "fit",
    "ga_search",
    "lasso_path",
    "lasso_select_ic",
    "stepwise_search",
]
