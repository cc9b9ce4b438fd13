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

"""Named selection methods compared by the benchmark."""

import dataclasses

from varsel.criteria import Criterion

EXHAUSTIVE = "exhaustive"
GA = "ga"
STEPWISE = "stepwise"
LASSO_IC = "lasso_ic"
LASSO_CV = "lasso_cv"

METHOD_NAMES = (
    "BIC",
    "AIC",
    "GA_BIC",
    "GA_AIC",
    "LASSO_BIC",
    "LASSO_AIC",
    "LASSO_CV",
    "Stepwise_BIC",
    "Stepwise_AIC",
)


def _parse(name):
    if name == "LASSO_CV":
        return LASSO_CV, None
    prefix, _, suffix = name.rpartition("_")
    criterion = Criterion.from_name(suffix)
    strategy = {"": EXHAUSTIVE, "GA": GA, "LASSO": LASSO_IC, "Stepwise": STEPWISE}[
        prefix
    ]
    return strategy, criterion


@dataclasses.dataclass(frozen=True)
class MethodSpec(object):
    """A search strategy bound to a criterion.

    ``BIC``/``AIC`` are exhaustive searches, ``GA_*`` genetic searches,
    ``LASSO_*`` path searches and ``Stepwise_*`` stepwise searches.

    :type name: str
    :param name: one of :data:`METHOD_NAMES`.

    :type parameters: dict
    :param parameters: (Optional) method-specific overrides, e.g.
                       ``{"n_folds": 5}`` or a ``ga`` mapping.
    """

    name: str
    parameters: dict = dataclasses.field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.name not in METHOD_NAMES:
            raise ValueError(
                "Pass one of %s, got %r" % (", ".join(METHOD_NAMES), self.name)
            )

    @classmethod
    def from_name(cls, name, **parameters):
        """Factory: case-insensitive lookup of a method name."""
        for candidate in METHOD_NAMES:
            if candidate.lower() == str(name).lower():
                return cls(candidate, dict(parameters))
        raise ValueError(
            "Pass one of %s, got %r" % (", ".join(METHOD_NAMES), name)
        )

    @property
    def strategy(self):
        return _parse(self.name)[0]

    @property
    def criterion(self):
        """:class:`~varsel.criteria.Criterion`, or ``None`` for ``LASSO_CV``."""
        return _parse(self.name)[1]

    @property
    def uses_lasso(self):
        return self.strategy in (LASSO_IC, LASSO_CV)
