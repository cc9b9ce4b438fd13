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

"""Response families with their canonical links.

Only canonical links are supported: Gaussian/identity, Bernoulli/logit and
Poisson/log.
"""

import enum

import numpy as np
from scipy import special

# Bounds applied to fitted probabilities inside the Bernoulli likelihood.
PROB_CLAMP = 1e-10


class Family(enum.Enum):
    """Exponential-family response distribution."""

    GAUSSIAN = "gaussian"
    BERNOULLI = "bernoulli"
    POISSON = "poisson"

    @classmethod
    def from_name(cls, name):
        """Look up a family by (case-insensitive) name.

        :type name: str or :class:`Family`
        :param name: e.g. ``"gaussian"``, ``"Bernoulli"``, ``"POISSON"``.

        :rtype: :class:`Family`
        :returns: the matching family.

        :raises: ``ValueError`` for unknown names.
        """
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).lower())
        except ValueError:
            raise ValueError(
                "Pass one of %s, got %r" % ([member.value for member in cls], name)
            )

    @property
    def link_name(self):
        return {"gaussian": "identity", "bernoulli": "logit", "poisson": "log"}[
            self.value
        ]

    @property
    def extra_params(self):
        """Parameters beyond intercept and slopes (σ² for Gaussian)."""
        return 1 if self is Family.GAUSSIAN else 0

    def inverse_link(self, eta):
        """Map the linear predictor to the mean."""
        eta = np.asarray(eta, dtype=float)
        if self is Family.GAUSSIAN:
            return eta
        if self is Family.BERNOULLI:
            return special.expit(eta)
        with np.errstate(over="ignore"):
            return np.exp(eta)

    def variance(self, mu):
        """Variance function V(μ); the IRLS weight for canonical links."""
        mu = np.asarray(mu, dtype=float)
        if self is Family.GAUSSIAN:
            return np.ones_like(mu)
        if self is Family.BERNOULLI:
            return mu * (1.0 - mu)
        return mu

    def validate_response(self, y):
        """Check that ``y`` lies in the support of the family.

        :raises: ``ValueError`` if any response is out of support.
        """
        y = np.asarray(y, dtype=float)
        if not np.all(np.isfinite(y)):
            raise ValueError("Pass a finite response vector")
        if self is Family.BERNOULLI and not np.all((y == 0.0) | (y == 1.0)):
            raise ValueError("Pass Bernoulli responses equal to 0 or 1")
        if self is Family.POISSON and not (
            np.all(y >= 0.0) and np.all(y == np.floor(y))
        ):
            raise ValueError("Pass Poisson responses that are integers >= 0")

    def glm_loglik(self, y, eta):
        """Log-likelihood of a Bernoulli or Poisson GLM at ``eta``.

        The Poisson value keeps the ``-log(y!)`` constant so that criteria
        are comparable with other software.
        """
        y = np.asarray(y, dtype=float)
        eta = np.asarray(eta, dtype=float)
        if self is Family.BERNOULLI:
            prob = np.clip(special.expit(eta), PROB_CLAMP, 1.0 - PROB_CLAMP)
            return float(np.sum(y * np.log(prob) + (1.0 - y) * np.log1p(-prob)))
        if self is Family.POISSON:
            with np.errstate(over="ignore"):
                mu = np.exp(eta)
            return float(np.sum(y * eta - mu - special.gammaln(y + 1.0)))
        raise ValueError("Pass a Bernoulli or Poisson family")

    def deviance(self, y, mu):
        """Total deviance of fitted means ``mu`` against ``y``."""
        y = np.asarray(y, dtype=float)
        mu = np.asarray(mu, dtype=float)
        if self is Family.GAUSSIAN:
            return float(np.sum((y - mu) ** 2))
        if self is Family.BERNOULLI:
            mu = np.clip(mu, PROB_CLAMP, 1.0 - PROB_CLAMP)
            return float(
                -2.0 * np.sum(y * np.log(mu) + (1.0 - y) * np.log1p(-mu))
            )
        mu = np.maximum(mu, np.finfo(float).tiny)
        with np.errstate(over="ignore", divide="ignore"):
            return float(2.0 * np.sum(special.xlogy(y, y / mu) - (y - mu)))
