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

"""Run named selection methods on one dataset."""

import dataclasses
import logging

from varsel import lasso as lasso_mod
from varsel.dataset import ModelSpec
from varsel.methods import EXHAUSTIVE
from varsel.methods import GA
from varsel.methods import LASSO_CV
from varsel.methods import LASSO_IC
from varsel.methods import MethodSpec
from varsel.methods import STEPWISE
from varsel.search import GAConfig
from varsel.search import MAX_EXHAUSTIVE_P
from varsel.search import exhaustive_search
from varsel.search import ga_search
from varsel.search import stepwise_search


_LOGGER = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True, eq=False)
class Selection(object):
    """Model chosen by one method.

    :type method: str
    :param method: method name, e.g. ``"GA_BIC"``.

    :type spec: :class:`~varsel.dataset.ModelSpec`
    :param spec: selected support.

    :type score: float
    :param score: criterion value, or the minimal CV loss for ``LASSO_CV``.

    :type n_models_evaluated: int
    :param n_models_evaluated: candidate models scored.

    :type detail: object
    :param detail: the underlying :class:`~varsel.search.SearchResult` or
                   :class:`~varsel.lasso.CVResult`.
    """

    method: str
    spec: ModelSpec
    score: float
    n_models_evaluated: int
    detail: object = None


class Selector(object):
    """Bundle a dataset with the settings needed to run every method.

    The LASSO path is computed once and shared by ``LASSO_BIC``,
    ``LASSO_AIC`` and ``LASSO_CV``.

    :type data: :class:`~varsel.dataset.Dataset`
    :param data: the dataset to select on.

    :type ga_config: :class:`~varsel.search.GAConfig`
    :param ga_config: (Optional) genetic-algorithm settings.

    :type n_lambda: int
    :param n_lambda: LASSO grid size.

    :type n_folds: int
    :param n_folds: cross-validation folds for ``LASSO_CV``.

    :type seed: int
    :param seed: seed for the fold shuffle. The GA uses ``ga_config.seed``.

    :type direction: str
    :param direction: stepwise direction.

    :type max_exhaustive_p: int
    :param max_exhaustive_p: refuse exhaustive search above this ``p``.

    :type mapper: callable
    :param mapper: (Optional) ``map``-like callable passed to the GA and
                   stepwise searches.
    """

    def __init__(
        self,
        data,
        ga_config=None,
        n_lambda=lasso_mod.DEFAULT_N_LAMBDA,
        n_folds=lasso_mod.DEFAULT_N_FOLDS,
        seed=0,
        direction="both",
        max_exhaustive_p=MAX_EXHAUSTIVE_P,
        mapper=None,
    ):
        self.data = data
        self.ga_config = ga_config or GAConfig()
        self.n_lambda = n_lambda
        self.n_folds = n_folds
        self.seed = seed
        self.direction = direction
        self.max_exhaustive_p = max_exhaustive_p
        self._mapper = mapper
        self._path = None

    @property
    def path(self):
        """The dataset's LASSO path, computed on first use."""
        if self._path is None:
            self._path = lasso_mod.lasso_path(self.data, n_lambda=self.n_lambda)
        return self._path

    def run(self, method):
        """Run one method.

        :type method: :class:`~varsel.methods.MethodSpec` or str
        :param method: the method, e.g. ``"Stepwise_AIC"``.

        :rtype: :class:`Selection`
        :returns: the selected model.
        """
        if not isinstance(method, MethodSpec):
            method = MethodSpec.from_name(method)
        strategy = method.strategy
        if strategy == LASSO_CV:
            result = lasso_mod.cv_select(
                self.data,
                self.path,
                n_folds=method.parameters.get("n_folds", self.n_folds),
                seed=self.seed,
            )
            return Selection(
                method.name,
                result.selected,
                float(result.cv_mean[result.index_min]),
                self.path.n_lambda,
                result,
            )
        criterion = method.criterion
        if strategy == EXHAUSTIVE:
            result = exhaustive_search(
                self.data, criterion, max_p=self.max_exhaustive_p
            )
        elif strategy == GA:
            config = self.ga_config
            if method.parameters.get("ga"):
                config = config.replace(**method.parameters["ga"])
            result = ga_search(self.data, criterion, config=config, mapper=self._mapper)
        elif strategy == STEPWISE:
            result = stepwise_search(
                self.data,
                criterion,
                direction=method.parameters.get("direction", self.direction),
                mapper=self._mapper,
            )
        elif strategy == LASSO_IC:
            result = lasso_mod.lasso_select_ic(
                self.data,
                self.path,
                criterion,
                refit=method.parameters.get("refit", True),
            )
        else:
            raise ValueError("Unknown strategy %r" % (strategy,))
        _LOGGER.debug("%s selected %s", method.name, result.spec.bits)
        return Selection(
            method.name,
            result.spec,
            result.best_score,
            result.n_models_evaluated,
            result,
        )

    def run_all(self, methods):
        """Run several methods; returns ``{name: Selection}``."""
        return {selection.method: selection for selection in map(self.run, methods)}
