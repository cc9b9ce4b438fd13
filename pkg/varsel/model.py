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

"""Maximum-likelihood fits of candidate models.

Gaussian models are fit by least squares through a column-pivoted QR
decomposition; Bernoulli and Poisson models by iteratively reweighted least
squares (IRLS). Every fit always includes an unpenalized intercept.
"""

import dataclasses
import logging
import math
import warnings

import numpy as np
from scipy import linalg

from varsel.dataset import ModelSpec
from varsel.exceptions import DegenerateFit
from varsel.exceptions import NotConverged
from varsel.exceptions import RankDeficient
from varsel.exceptions import SeparationWarning
from varsel.family import Family


_LOGGER = logging.getLogger(__name__)

RANK_TOLERANCE = 1e-7
IRLS_TOLERANCE = 1e-8
IRLS_MAX_ITER = 50
IRLS_MAX_HALVINGS = 10
ETA_DIVERGENCE = 30.0
_STEP_TOLERANCE = 1e-8
_LOG_2PI = math.log(2.0 * math.pi)


@dataclasses.dataclass(frozen=True, eq=False)
class FittedModel(object):
    """Maximum-likelihood estimates for one :class:`~varsel.dataset.ModelSpec`.

    :type spec: :class:`~varsel.dataset.ModelSpec`
    :param spec: the fitted candidate model.

    :type family: :class:`~varsel.family.Family`
    :param family: response family of the data the model was fit on.

    :type beta0: float
    :param beta0: intercept estimate.

    :type beta: :class:`numpy.ndarray`
    :param beta: estimates for the included regressors, in column order.

    :type loglik: float
    :param loglik: maximized log-likelihood.

    :type k: int
    :param k: number of estimated parameters (σ² counts for Gaussian).

    :type converged: bool
    :param converged: False when IRLS stopped on a diverging predictor.

    :type sigma2_hat: float
    :param sigma2_hat: error-variance MLE ``RSS/n`` (Gaussian only, else
                       ``None``).

    :type n_iterations: int
    :param n_iterations: IRLS iterations (0 for least squares).
    """

    spec: ModelSpec
    family: Family
    beta0: float
    beta: np.ndarray
    loglik: float
    k: int
    converged: bool = True
    sigma2_hat: float = None
    n_iterations: int = 0

    def coefficients(self):
        """Length-``p`` slope vector with zeros for excluded regressors."""
        full = np.zeros(self.spec.width)
        full[list(self.spec.columns)] = self.beta
        return full

    def linear_predictor(self, X):
        """``beta0 + X @ coefficients()`` for a full ``n x p`` matrix."""
        return self.beta0 + np.asarray(X, dtype=float) @ self.coefficients()


def _param_count(family, spec):
    return spec.size + 1 + family.extra_params


def _pivoted_qr(Z, spec):
    """Economic pivoted QR of ``Z`` with a rank check.

    :raises: :class:`~varsel.exceptions.RankDeficient` if a column of
             ``Z`` is (numerically) a combination of the others.
    """
    q, r, piv = linalg.qr(Z, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    if diag.size and (diag[0] == 0.0 or np.any(diag < RANK_TOLERANCE * diag[0])):
        raise RankDeficient(
            "Design has linearly dependent columns",
            {"spec": spec.bits, "rank": int(np.sum(diag >= RANK_TOLERANCE * diag[0]))},
        )
    return q, r, piv


def _least_squares(Z, y, spec):
    q, r, piv = _pivoted_qr(Z, spec)
    solution = linalg.solve_triangular(r, q.T @ y)
    coef = np.empty_like(solution)
    coef[piv] = solution
    return coef


def _gaussian_loglik(rss, n):
    return -0.5 * n * (_LOG_2PI + math.log(rss / n) + 1.0)


def fit_lm(data, spec):
    """Least-squares fit of a Gaussian linear model.

    :type data: :class:`~varsel.dataset.Dataset`
    :param data: Gaussian dataset.

    :type spec: :class:`~varsel.dataset.ModelSpec`
    :param spec: regressors to include next to the intercept.

    :rtype: :class:`FittedModel`
    :returns: OLS estimates, ``sigma2_hat = RSS/n`` and the profile
              log-likelihood ``-(n/2)(log 2π + log(RSS/n) + 1)``.

    :raises: :class:`~varsel.exceptions.RankDeficient`,
             :class:`~varsel.exceptions.DegenerateFit` when the fit
             interpolates ``y``.
    """
    if data.family is not Family.GAUSSIAN:
        raise ValueError("Pass a Gaussian dataset to fit_lm")
    Z = data.design(spec)
    y = data.y
    coef = _least_squares(Z, y, spec)
    residual = y - Z @ coef
    rss = float(residual @ residual)
    n = data.n
    if rss <= n * np.finfo(float).eps * float(np.var(y)):
        raise DegenerateFit(
            "Residual sum of squares vanishes", {"spec": spec.bits, "rss": rss}
        )
    return FittedModel(
        spec=spec,
        family=data.family,
        beta0=float(coef[0]),
        beta=coef[1:],
        loglik=_gaussian_loglik(rss, n),
        k=_param_count(data.family, spec),
        converged=True,
        sigma2_hat=rss / n,
    )


def _irls_start(family, y):
    if family is Family.BERNOULLI:
        mu = (y + 0.5) / 2.0
        return np.log(mu / (1.0 - mu))
    return np.log(y + 0.1)


def fit_glm(data, spec, warn=True):
    """IRLS fit of a Bernoulli (logit) or Poisson (log) GLM.

    Each iteration solves a weighted least-squares problem by QR. A step
    that increases the deviance is halved up to ``IRLS_MAX_HALVINGS``
    times. Iteration stops once the relative deviance change drops below
    ``IRLS_TOLERANCE`` and the coefficient step has settled.

    :type data: :class:`~varsel.dataset.Dataset`
    :param data: Bernoulli or Poisson dataset.

    :type spec: :class:`~varsel.dataset.ModelSpec`
    :param spec: regressors to include next to the intercept.

    :type warn: bool
    :param warn: emit :class:`~varsel.exceptions.SeparationWarning` when the
                 linear predictor diverges. Searches pass ``False`` and rely
                 on ``converged`` instead.

    :rtype: :class:`FittedModel`
    :returns: the fit; ``converged`` is False if any ``|eta|`` exceeded
              ``ETA_DIVERGENCE``.

    :raises: :class:`~varsel.exceptions.RankDeficient`,
             :class:`~varsel.exceptions.NotConverged`.
    """
    family = data.family
    if family is Family.GAUSSIAN:
        raise ValueError("Pass a Bernoulli or Poisson dataset to fit_glm")
    Z = data.design(spec)
    _pivoted_qr(Z, spec)
    y = data.y

    eta = _irls_start(family, y)
    mu = family.inverse_link(eta)
    deviance = family.deviance(y, mu)
    coef = None
    separated = False

    for iteration in range(1, IRLS_MAX_ITER + 1):
        weight = np.maximum(family.variance(mu), np.finfo(float).tiny)
        working = eta + (y - mu) / weight
        root = np.sqrt(weight)
        candidate = linalg.lstsq(
            Z * root[:, None], working * root, lapack_driver="gelsy"
        )[0]
        cand_eta = Z @ candidate
        cand_mu = family.inverse_link(cand_eta)
        cand_dev = family.deviance(y, cand_mu)

        if coef is not None:
            halvings = 0
            while (not math.isfinite(cand_dev) or cand_dev > deviance) and (
                halvings < IRLS_MAX_HALVINGS
            ):
                candidate = 0.5 * (candidate + coef)
                cand_eta = Z @ candidate
                cand_mu = family.inverse_link(cand_eta)
                cand_dev = family.deviance(y, cand_mu)
                halvings += 1
            step = float(np.max(np.abs(candidate - coef)))
        else:
            step = math.inf

        coef, eta, mu = candidate, cand_eta, cand_mu
        change = abs(cand_dev - deviance) / (abs(cand_dev) + 0.1)
        deviance = cand_dev

        if np.max(np.abs(eta)) > ETA_DIVERGENCE:
            separated = True
            break
        if change < IRLS_TOLERANCE and step <= _STEP_TOLERANCE * (
            1.0 + float(np.max(np.abs(coef)))
        ):
            break
    else:
        raise NotConverged(
            "IRLS did not converge",
            {"spec": spec.bits, "iterations": IRLS_MAX_ITER, "deviance": deviance},
        )

    if separated:
        message = (
            "Linear predictor exceeded %g for spec %s; the MLE is not finite"
            % (ETA_DIVERGENCE, spec.bits)
        )
        if warn:
            warnings.warn(message, SeparationWarning, stacklevel=2)
        _LOGGER.debug(message)
    else:
        _LOGGER.debug("IRLS converged in %d iterations for %s", iteration, spec.bits)

    return FittedModel(
        spec=spec,
        family=family,
        beta0=float(coef[0]),
        beta=coef[1:],
        loglik=family.glm_loglik(y, eta),
        k=_param_count(family, spec),
        converged=not separated,
        sigma2_hat=None,
        n_iterations=iteration,
    )


def fit(data, spec, warn=True):
    """Fit ``spec`` on ``data`` with the estimator matching its family."""
    if data.family is Family.GAUSSIAN:
        return fit_lm(data, spec)
    return fit_glm(data, spec, warn=warn)


def loglik(data, spec, beta0, beta):
    """Family log-likelihood at supplied coefficients.

    Gaussian values are profiled over σ² (``σ² = RSS/n``).

    :type beta0: float
    :param beta0: intercept.

    :type beta: array-like
    :param beta: slopes of the included regressors, in column order.

    :rtype: float
    :returns: the log-likelihood (``inf`` for a zero-residual Gaussian fit).

    :raises: ``ValueError`` on a dimension mismatch.
    """
    data.check_spec(spec)
    beta = np.asarray(beta, dtype=float).reshape(-1)
    if beta.size != spec.size:
        raise ValueError(
            "Spec has %d regressors but %d slopes were passed" % (spec.size, beta.size)
        )
    eta = beta0 + data.X[:, list(spec.columns)] @ beta
    if data.family is Family.GAUSSIAN:
        residual = data.y - eta
        rss = float(residual @ residual)
        if rss <= 0.0:
            return math.inf
        return _gaussian_loglik(rss, data.n)
    return data.family.glm_loglik(data.y, eta)


def deviance(family, y, mu):
    """Total deviance of means ``mu`` for ``family`` (RSS for Gaussian)."""
    return Family.from_name(family).deviance(y, mu)
