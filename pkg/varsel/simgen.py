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

"""Synthetic datasets for the simulation studies.

Study 1 draws ``p = 6`` equicorrelated regressors with a true model
``{x1, x2, x3}``; study 2 draws ``p = 50`` AR(1) regressors whose odd
indices are active. Responses follow ``eta = beta0 + X beta`` under a
Gaussian, Bernoulli or Poisson model.
"""

import dataclasses
import enum
import logging
import math

import numpy as np
from scipy import linalg

from varsel._helpers import _make_rng
from varsel._helpers import _mix_seed
from varsel.dataset import Dataset
from varsel.dataset import ModelSpec
from varsel.family import Family


_LOGGER = logging.getLogger(__name__)

POISSON_ETA_CAP = 8.0
GLM_BETA_SCALE_P50 = 0.3

SIGMA2_GRID = (6.25, 16.0, 100.0)
RHO_GRID = (0.0, 0.10, 0.25, 0.50, 0.75, 0.90)
STUDY1_N_GRID = (50, 100, 200, 400, 800, 1600, 3200, 6400)
STUDY2_N_GRID = (200, 400, 800, 1600, 3200, 6400)
DEFAULT_REPLICATES = 100


class Study(enum.Enum):
    """Design family of a simulation study."""

    S1_EQUICORR = "S1_equicorr"
    S2_AR1 = "S2_ar1"

    @classmethod
    def from_name(cls, name):
        if isinstance(name, cls):
            return name
        for member in cls:
            if str(name).lower() in (member.value.lower(), member.name.lower()):
                return member
        aliases = {
            "s1": cls.S1_EQUICORR,
            "1": cls.S1_EQUICORR,
            "s2": cls.S2_AR1,
            "2": cls.S2_AR1,
        }
        try:
            return aliases[str(name).lower()]
        except KeyError:
            raise ValueError(
                "Pass one of %s, got %r" % ([member.value for member in cls], name)
            )

    @property
    def default_p(self):
        return 6 if self is Study.S1_EQUICORR else 50

    def default_support(self, p):
        """True model: ``{1, 2, 3}`` for study 1, odd indices for study 2."""
        if self is Study.S1_EQUICORR:
            return ModelSpec.from_indices(p, [1, 2, 3][: min(3, p)])
        return ModelSpec.from_indices(p, range(1, p + 1, 2))


def mix_seed(*keys):
    """Counter-based seed for ``(base_seed, cell_index, replicate_index, ...)``."""
    return _mix_seed(*keys)


def default_beta_scale(family, p):
    """Effect multiplier applied to GLM settings."""
    family = Family.from_name(family)
    if family is not Family.GAUSSIAN and p >= 50:
        return GLM_BETA_SCALE_P50
    return 1.0


def _check_rho(rho):
    if not 0.0 <= rho < 1.0:
        raise ValueError("Pass rho in [0, 1), got %r" % (rho,))


def _check_dims(n, p):
    if n < 1 or p < 1:
        raise ValueError("Pass n >= 1 and p >= 1")


@dataclasses.dataclass(frozen=True)
class SimSetting(object):
    """One simulated-data configuration.

    :type study: :class:`Study`
    :param study: design family.

    :type family: :class:`~varsel.family.Family`
    :param family: response model.

    :type n: int
    :param n: sample size.

    :type p: int
    :param p: number of candidate regressors.

    :type rho: float
    :param rho: correlation parameter in ``[0, 1)``.

    :type sigma2: float
    :param sigma2: error variance (Gaussian only).

    :type true_support: :class:`~varsel.dataset.ModelSpec`
    :param true_support: active regressors.

    :type beta_value: float
    :param beta_value: coefficient of each active regressor.

    :type beta0: float
    :param beta0: intercept.

    :type seed: int
    :param seed: seed of the generator stream.
    """

    study: Study
    family: Family
    n: int
    p: int
    rho: float
    sigma2: float
    true_support: ModelSpec
    beta_value: float = 1.0
    beta0: float = 1.0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "study", Study.from_name(self.study))
        object.__setattr__(self, "family", Family.from_name(self.family))
        _check_dims(self.n, self.p)
        _check_rho(self.rho)
        if self.family is Family.GAUSSIAN and not self.sigma2 > 0.0:
            raise ValueError("Pass sigma2 > 0 for Gaussian settings")
        if self.true_support.width != self.p:
            raise ValueError("true_support width must equal p")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ValueError("Pass a non-negative integer seed")

    @classmethod
    def study1(cls, n, rho, sigma2, family=Family.GAUSSIAN, seed=0, beta_scale=None):
        """Factory: equicorrelated ``p = 6`` design with truth ``{x1, x2, x3}``."""
        return cls._for_study(
            Study.S1_EQUICORR, n, rho, sigma2, family, seed, beta_scale
        )

    @classmethod
    def study2(cls, n, rho, sigma2, family=Family.GAUSSIAN, seed=0, beta_scale=None):
        """Factory: AR(1) ``p = 50`` design with odd-indexed truth."""
        return cls._for_study(Study.S2_AR1, n, rho, sigma2, family, seed, beta_scale)

    @classmethod
    def _for_study(cls, study, n, rho, sigma2, family, seed, beta_scale, p=None):
        p = p or study.default_p
        if beta_scale is None:
            beta_scale = default_beta_scale(family, p)
        return cls(
            study=study,
            family=family,
            n=n,
            p=p,
            rho=rho,
            sigma2=sigma2,
            true_support=study.default_support(p),
            beta_value=float(beta_scale),
            seed=seed,
        )

    @property
    def cohens_f(self):
        """Cohen's f, ``1 / sigma``."""
        if not self.sigma2 > 0.0:
            return None
        return 1.0 / math.sqrt(self.sigma2)

    def beta(self):
        """Coefficient vector: ``beta_value`` on the true support, else 0."""
        beta = np.zeros(self.p)
        beta[list(self.true_support.columns)] = self.beta_value
        return beta

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


def gen_design_equicorr(n, p, rho, rng):
    """Rows i.i.d. ``N(0, (1 - rho) I + rho J)``.

    :type rng: :class:`numpy.random.Generator`
    :param rng: source of randomness.

    :rtype: :class:`numpy.ndarray`
    :returns: ``n x p`` matrix.
    """
    _check_dims(n, p)
    _check_rho(rho)
    covariance = (1.0 - rho) * np.eye(p) + rho * np.ones((p, p))
    factor = linalg.cholesky(covariance, lower=True)
    return rng.standard_normal((n, p)) @ factor.T


def gen_design_ar1(n, p, rho, rng):
    """Rows from ``x_k = rho * x_{k-1} + e_k`` with a stationary start.

    ``x_1 ~ N(0, 1 / (1 - rho**2))`` so every column has the stationary
    variance and ``Corr(x_k, x_{k+d}) = rho**d``.
    """
    _check_dims(n, p)
    _check_rho(rho)
    noise = rng.standard_normal((n, p))
    X = np.empty((n, p))
    X[:, 0] = noise[:, 0] / math.sqrt(1.0 - rho ** 2)
    for k in range(1, p):
        X[:, k] = rho * X[:, k - 1] + noise[:, k]
    return X


def _draw_response(X, setting, rng):
    X = np.asarray(X, dtype=float)
    if X.shape != (setting.n, setting.p):
        raise ValueError(
            "X has shape %s, setting expects (%d, %d)"
            % (X.shape, setting.n, setting.p)
        )
    eta = setting.beta0 + X @ setting.beta()
    family = setting.family
    if family is Family.GAUSSIAN:
        noise = rng.normal(0.0, math.sqrt(setting.sigma2), size=setting.n)
        return eta + noise, 0
    if family is Family.BERNOULLI:
        return rng.binomial(1, family.inverse_link(eta)).astype(float), 0
    clamped = int(np.count_nonzero(eta > POISSON_ETA_CAP))
    if clamped:
        _LOGGER.warning(
            "Clamped %d of %d Poisson linear predictors to %g",
            clamped,
            setting.n,
            POISSON_ETA_CAP,
        )
        eta = np.minimum(eta, POISSON_ETA_CAP)
    return rng.poisson(np.exp(eta)).astype(float), clamped


def gen_response(X, setting, rng):
    """Draw a response for ``X`` under ``setting``.

    :type X: :class:`numpy.ndarray`
    :param X: ``n x p`` design matching ``setting``.

    :type setting: :class:`SimSetting`
    :param setting: response model and effects.

    :type rng: :class:`numpy.random.Generator`
    :param rng: source of randomness.

    :rtype: :class:`numpy.ndarray`
    :returns: response of length ``n``.
    """
    return _draw_response(X, setting, rng)[0]


def gen_design(setting, rng):
    """Design matrix for ``setting.study``."""
    if setting.study is Study.S1_EQUICORR:
        return gen_design_equicorr(setting.n, setting.p, setting.rho, rng)
    return gen_design_ar1(setting.n, setting.p, setting.rho, rng)


def simulate(setting):
    """Generate a dataset for ``setting`` from its own seeded stream.

    :type setting: :class:`SimSetting`
    :param setting: complete configuration, seed included.

    :rtype: :class:`~varsel.dataset.Dataset`
    :returns: dataset whose metadata records the setting, Cohen's f and the
              number of clamped Poisson predictors.
    """
    rng = _make_rng(setting.seed)
    X = gen_design(setting, rng)
    y, clamped = _draw_response(X, setting, rng)
    metadata = {
        "study": setting.study.value,
        "family": setting.family.value,
        "n": setting.n,
        "p": setting.p,
        "rho": setting.rho,
        "sigma2": setting.sigma2,
        "cohens_f": setting.cohens_f,
        "true_support": setting.true_support.bits,
        "beta_value": setting.beta_value,
        "beta0": setting.beta0,
        "seed": setting.seed,
        "n_clamped": clamped,
    }
    return Dataset(y, X, family=setting.family, metadata=metadata)
