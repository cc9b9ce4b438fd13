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

"""LASSO regularization paths by cyclic coordinate descent.

Columns of ``X`` are centered and scaled to unit variance (divisor ``n``)
before fitting; coefficients are reported on the original scale. The
penalized objective at a given ``lambda`` is::

    deviance(y, mu) / (2 n) + lambda * sum_j |beta_j|

with the penalty on the standardized coefficients and an unpenalized
intercept. For Gaussian data the deviance is the residual sum of squares.
Gaussian paths use covariance updates; Bernoulli and Poisson paths wrap
the same coordinate descent in a proximal-Newton (penalized IRLS) loop.
"""

import concurrent.futures
import dataclasses
import logging
import math

import numpy as np

from varsel._helpers import _make_rng
from varsel._helpers import _soft_threshold
from varsel.criteria import Criterion
from varsel.criteria import score
from varsel.dataset import ModelSpec
from varsel.exceptions import AllModelsDegenerate
from varsel.exceptions import FitError
from varsel.exceptions import FoldDegenerate
from varsel.family import Family
from varsel.model import FittedModel
from varsel.model import fit
from varsel.model import loglik
from varsel.search import SearchResult


_LOGGER = logging.getLogger(__name__)

DEFAULT_N_LAMBDA = 100
DEFAULT_N_FOLDS = 10
CD_TOLERANCE = 1e-7
CD_MAX_SWEEPS = 100000
NEWTON_MAX_ITER = 25
_GLM_PROB_FLOOR = 1e-5
_GLM_WEIGHT_FLOOR = 1e-10


@dataclasses.dataclass(frozen=True, eq=False)
class LassoPath(object):
    """Solutions over a descending grid of penalties.

    :type family: :class:`~varsel.family.Family`
    :param family: response family of the fitted data.

    :type lambdas: :class:`numpy.ndarray`
    :param lambdas: strictly decreasing penalty grid.

    :type intercepts: :class:`numpy.ndarray`
    :param intercepts: original-scale intercept per ``lambda``.

    :type coefs: :class:`numpy.ndarray`
    :param coefs: ``n_lambda x p`` original-scale coefficients.

    :type std_coefs: :class:`numpy.ndarray`
    :param std_coefs: the same coefficients on the standardized scale.

    :type supports: tuple of :class:`~varsel.dataset.ModelSpec`
    :param supports: nonzero pattern of each row of ``coefs``.

    :type converged: :class:`numpy.ndarray`
    :param converged: per-``lambda`` flag; False when a sweep or Newton cap
                      was hit.

    :type n_sweeps: :class:`numpy.ndarray`
    :param n_sweeps: coordinate-descent sweeps spent per ``lambda``.

    :type x_mean: :class:`numpy.ndarray`
    :param x_mean: column means used for standardization.

    :type x_scale: :class:`numpy.ndarray`
    :param x_scale: column standard deviations (0 for constant columns).
    """

    family: Family
    lambdas: np.ndarray
    intercepts: np.ndarray
    coefs: np.ndarray
    std_coefs: np.ndarray
    supports: tuple
    converged: np.ndarray
    n_sweeps: np.ndarray
    x_mean: np.ndarray
    x_scale: np.ndarray

    @property
    def n_lambda(self):
        return self.lambdas.size

    def distinct_supports(self):
        """Supports in order of first appearance along the path.

        :rtype: list of tuple
        :returns: ``(index, ModelSpec)`` for the largest ``lambda`` at which
                  each distinct support occurs.
        """
        seen = set()
        distinct = []
        for index, spec in enumerate(self.supports):
            if spec.mask not in seen:
                seen.add(spec.mask)
                distinct.append((index, spec))
        return distinct

    def linear_predictor(self, X):
        """``n x n_lambda`` matrix of linear predictors for rows of ``X``."""
        return self.intercepts[None, :] + np.asarray(X, dtype=float) @ self.coefs.T

    def objective(self, data, index, lam=None):
        """Penalized objective of solution ``index``.

        :type lam: float
        :param lam: (Optional) penalty to evaluate at; defaults to
                    ``lambdas[index]``.
        """
        if lam is None:
            lam = self.lambdas[index]
        eta = self.intercepts[index] + data.X @ self.coefs[index]
        mu = self.family.inverse_link(eta)
        loss = self.family.deviance(data.y, mu) / (2.0 * data.n)
        return loss + lam * float(np.sum(np.abs(self.std_coefs[index])))

    def gradient(self, data, index):
        """Standardized-scale gradient of the log-likelihood term.

        Equals ``X_std.T @ (y - mu) / n``; KKT conditions compare it to
        ``lambda * sign(beta)``.
        """
        eta = self.intercepts[index] + data.X @ self.coefs[index]
        mu = self.family.inverse_link(eta)
        scale = np.where(self.x_scale > 0.0, self.x_scale, 1.0)
        standardized = (data.X - self.x_mean) / scale
        return standardized.T @ (data.y - mu) / data.n


@dataclasses.dataclass(frozen=True, eq=False)
class CVResult(object):
    """K-fold cross-validation over a path's ``lambda`` grid.

    :type lambda_min: float
    :param lambda_min: ``lambda`` minimizing ``cv_mean`` (ties go to the
                       larger ``lambda``).

    :type index_min: int
    :param index_min: position of ``lambda_min`` in the grid.

    :type cv_mean: :class:`numpy.ndarray`
    :param cv_mean: mean validation loss per ``lambda``.

    :type cv_se: :class:`numpy.ndarray`
    :param cv_se: standard error of the fold losses per ``lambda``.

    :type fold_assignment: :class:`numpy.ndarray`
    :param fold_assignment: fold id of each observation.

    :type selected: :class:`~varsel.dataset.ModelSpec`
    :param selected: support of the full-data path at ``index_min``.
    """

    lambda_min: float
    index_min: int
    cv_mean: np.ndarray
    cv_se: np.ndarray
    fold_assignment: np.ndarray
    selected: ModelSpec
    lambdas: np.ndarray = None


def _standardize(X):
    mean = X.mean(axis=0)
    scale = np.sqrt(np.mean((X - mean) ** 2, axis=0))
    usable = scale > 1e-10 * (1.0 + np.abs(mean))
    scale = np.where(usable, scale, 0.0)
    standardized = np.zeros_like(X)
    standardized[:, usable] = (X[:, usable] - mean[usable]) / scale[usable]
    return mean, scale, usable, standardized


def _null_intercept(family, y):
    ybar = float(np.mean(y))
    if family is Family.GAUSSIAN:
        return ybar
    if family is Family.BERNOULLI:
        if ybar <= 0.0 or ybar >= 1.0:
            raise ValueError("Bernoulli response has a single class")
        return math.log(ybar / (1.0 - ybar))
    if ybar <= 0.0:
        raise ValueError("Poisson response is identically zero")
    return math.log(ybar)


def lambda_grid(lambda_max, n_lambda, ratio):
    """Log-spaced grid from ``lambda_max`` down to ``ratio * lambda_max``."""
    if n_lambda < 1:
        raise ValueError("Pass n_lambda >= 1")
    if n_lambda == 1:
        return np.array([lambda_max])
    return lambda_max * ratio ** (np.arange(n_lambda) / (n_lambda - 1.0))


def _sweep_gaussian(gram, corr, beta, fitted, lam, columns):
    """One covariance-update sweep; returns the largest coefficient change."""
    largest = 0.0
    for j in columns:
        old = beta[j]
        target = corr[j] - fitted[j] + gram[j, j] * old
        new = _soft_threshold(target, lam) / gram[j, j]
        if new != old:
            fitted += gram[:, j] * (new - old)
            beta[j] = new
            largest = max(largest, abs(new - old))
    return largest


def _solve_gaussian(gram, corr, beta, lam, tol, max_sweeps):
    """Active-set coordinate descent for the Gaussian objective."""
    fitted = gram @ beta
    everything = range(beta.size)
    sweeps = 0
    while sweeps < max_sweeps:
        sweeps += 1
        if _sweep_gaussian(gram, corr, beta, fitted, lam, everything) < tol:
            return sweeps, True
        active = np.flatnonzero(beta)
        while sweeps < max_sweeps:
            sweeps += 1
            if _sweep_gaussian(gram, corr, beta, fitted, lam, active) < tol:
                break
    return sweeps, False


def _sweep_weighted(Xs, weight, residual, beta, curvature, lam, columns, n):
    """One naive-update sweep on a weighted least-squares objective."""
    largest = 0.0
    for j in columns:
        old = beta[j]
        column = Xs[:, j]
        target = (weight * column) @ residual / n + curvature[j] * old
        new = _soft_threshold(target, lam) / curvature[j]
        if new != old:
            residual -= column * (new - old)
            beta[j] = new
            largest = max(largest, abs(new - old))
    return largest


def _solve_weighted(Xs, weight, working, beta0, beta, lam, tol, max_sweeps):
    """Penalized weighted least squares with an unpenalized intercept."""
    n = Xs.shape[0]
    curvature = np.maximum((weight[:, None] * Xs ** 2).sum(axis=0) / n, 1e-12)
    residual = working - beta0 - Xs @ beta
    total_weight = weight.sum()
    everything = range(beta.size)
    sweeps = 0

    def _sweep(columns):
        nonlocal beta0
        shift = (weight @ residual) / total_weight
        beta0 += shift
        residual[:] -= shift
        return max(
            abs(shift),
            _sweep_weighted(Xs, weight, residual, beta, curvature, lam, columns, n),
        )

    while sweeps < max_sweeps:
        sweeps += 1
        if _sweep(everything) < tol:
            return beta0, sweeps, True
        active = np.flatnonzero(beta)
        while sweeps < max_sweeps:
            sweeps += 1
            if _sweep(active) < tol:
                break
    return beta0, sweeps, False


def _glm_objective(family, y, Xs, beta0, beta, lam):
    mu = family.inverse_link(beta0 + Xs @ beta)
    return family.deviance(y, mu) / (2.0 * y.size) + lam * float(np.sum(np.abs(beta)))


def _solve_glm(family, y, Xs, beta0, beta, lam, tol, max_sweeps):
    """Proximal-Newton outer loop around weighted coordinate descent."""
    total_sweeps = 0
    objective = _glm_objective(family, y, Xs, beta0, beta, lam)
    for _ in range(NEWTON_MAX_ITER):
        eta = beta0 + Xs @ beta
        mu = family.inverse_link(eta)
        if family is Family.BERNOULLI:
            mu = np.clip(mu, _GLM_PROB_FLOOR, 1.0 - _GLM_PROB_FLOOR)
        weight = np.maximum(family.variance(mu), _GLM_WEIGHT_FLOOR)
        working = eta + (y - mu) / weight

        new_beta = beta.copy()
        new_beta0, sweeps, inner_ok = _solve_weighted(
            Xs, weight, working, beta0, new_beta, lam, tol, max_sweeps
        )
        total_sweeps += sweeps
        new_objective = _glm_objective(family, y, Xs, new_beta0, new_beta, lam)
        halvings = 0
        while not new_objective <= objective + 1e-12 * abs(objective) and halvings < 10:
            new_beta = 0.5 * (new_beta + beta)
            new_beta0 = 0.5 * (new_beta0 + beta0)
            new_objective = _glm_objective(family, y, Xs, new_beta0, new_beta, lam)
            halvings += 1

        step = float(np.max(np.abs(new_beta - beta), initial=0.0))
        change = max(abs(new_beta0 - beta0), step)
        beta[:] = new_beta
        beta0, objective = new_beta0, new_objective
        if change < tol and inner_ok:
            return beta0, total_sweeps, True
    return beta0, total_sweeps, False


def lasso_path(
    data,
    n_lambda=DEFAULT_N_LAMBDA,
    lambda_min_ratio=None,
    lambdas=None,
    tol=CD_TOLERANCE,
    max_sweeps=CD_MAX_SWEEPS,
):
    """Compute the LASSO path with warm starts.

    :type data: :class:`~varsel.dataset.Dataset`
    :param data: dataset with ``p >= 1``.

    :type n_lambda: int
    :param n_lambda: grid size when ``lambdas`` is not given.

    :type lambda_min_ratio: float
    :param lambda_min_ratio: (Optional) smallest ``lambda`` as a fraction of
                             ``lambda_max``; defaults to ``1e-4`` when
                             ``n > p`` and ``1e-2`` otherwise.

    :type lambdas: array-like
    :param lambdas: (Optional) explicit strictly decreasing grid, e.g. the
                    full-data grid when refitting CV folds.

    :type tol: float
    :param tol: largest standardized coefficient change accepted as
                converged.

    :type max_sweeps: int
    :param max_sweeps: coordinate-descent sweep cap per ``lambda``.

    :rtype: :class:`LassoPath`
    :returns: the path; at ``lambda_max`` every coefficient is exactly 0.
    """
    if data.p < 1:
        raise ValueError("Pass a dataset with at least one regressor")
    family = data.family
    y = data.y
    n, p = data.n, data.p
    mean, scale, usable, Xs_full = _standardize(data.X)
    Xs = Xs_full[:, usable]
    null_intercept = _null_intercept(family, y)

    generated = lambdas is None
    if generated:
        gradient = Xs.T @ (y - float(np.mean(y))) / n
        lambda_max = float(np.max(np.abs(gradient), initial=0.0))
        if lambda_max <= 0.0:
            _LOGGER.warning("lambda_max is 0; the path is identically zero")
            lambda_max = 1.0
        if lambda_min_ratio is None:
            lambda_min_ratio = 1e-4 if n > p else 1e-2
        grid = lambda_grid(lambda_max, n_lambda, lambda_min_ratio)
    else:
        grid = np.asarray(lambdas, dtype=float).reshape(-1)
        if grid.size < 1 or np.any(grid <= 0.0) or np.any(np.diff(grid) >= 0.0):
            raise ValueError("Pass a strictly decreasing grid of positive lambdas")

    size = grid.size
    std_coefs = np.zeros((size, p))
    std_intercepts = np.zeros(size)
    converged = np.ones(size, dtype=bool)
    n_sweeps = np.zeros(size, dtype=int)

    beta = np.zeros(Xs.shape[1])
    beta0 = null_intercept
    if family is Family.GAUSSIAN:
        centered = y - null_intercept
        gram = Xs.T @ Xs / n
        corr = Xs.T @ centered / n

    for index, lam in enumerate(grid):
        if generated and index == 0:
            std_intercepts[0] = null_intercept
            continue
        if Xs.shape[1]:
            if family is Family.GAUSSIAN:
                sweeps, ok = _solve_gaussian(gram, corr, beta, lam, tol, max_sweeps)
            else:
                beta0, sweeps, ok = _solve_glm(
                    family, y, Xs, beta0, beta, lam, tol, max_sweeps
                )
        else:
            sweeps, ok = 0, True
        n_sweeps[index] = sweeps
        converged[index] = ok
        if not ok:
            _LOGGER.warning("Coordinate descent hit its cap at lambda=%g", lam)
        std_coefs[index, usable] = beta
        std_intercepts[index] = beta0
        _LOGGER.debug(
            "lambda=%g: %d sweeps, %d nonzero", lam, sweeps, np.count_nonzero(beta)
        )

    coefs = np.zeros_like(std_coefs)
    coefs[:, usable] = std_coefs[:, usable] / scale[usable]
    intercepts = std_intercepts - coefs @ mean
    supports = tuple(ModelSpec.from_bools(row != 0.0) for row in std_coefs)
    return LassoPath(
        family=family,
        lambdas=grid,
        intercepts=intercepts,
        coefs=coefs,
        std_coefs=std_coefs,
        supports=supports,
        converged=converged,
        n_sweeps=n_sweeps,
        x_mean=mean,
        x_scale=scale,
    )


def assign_folds(n, n_folds, rng):
    """Shuffle ``0..n-1`` into ``n_folds`` folds whose sizes differ by <= 1."""
    folds = np.empty(n, dtype=int)
    folds[rng.permutation(n)] = np.arange(n) % n_folds
    return folds


def _trainable(family, y):
    if family is Family.BERNOULLI:
        return 0.0 < float(np.mean(y)) < 1.0
    if family is Family.POISSON:
        return float(np.sum(y)) > 0.0
    return True


def _fold_losses(data, path, folds, fold, tol, max_sweeps):
    train = data.subset(folds != fold)
    held_out = data.subset(folds == fold)
    fold_path = lasso_path(train, lambdas=path.lambdas, tol=tol, max_sweeps=max_sweeps)
    eta = fold_path.linear_predictor(held_out.X)
    if data.family is Family.GAUSSIAN:
        return np.mean((held_out.y[:, None] - eta) ** 2, axis=0)
    mu = data.family.inverse_link(eta)
    return np.array(
        [data.family.deviance(held_out.y, mu[:, j]) for j in range(mu.shape[1])]
    ) / held_out.n


def cv_select(
    data,
    path,
    n_folds=DEFAULT_N_FOLDS,
    seed=0,
    n_jobs=1,
    tol=CD_TOLERANCE,
    max_sweeps=CD_MAX_SWEEPS,
):
    """Choose ``lambda`` by K-fold cross-validation.

    Each fold refits the path on its training rows over the same grid as
    ``path``. The validation loss is the mean squared error for Gaussian
    data and the mean deviance for Bernoulli/Poisson data.

    :type path: :class:`LassoPath`
    :param path: full-data path whose grid is cross-validated.

    :type n_folds: int
    :param n_folds: number of folds, between 2 and ``n``.

    :type seed: int
    :param seed: seed of the fold shuffle.

    :type n_jobs: int
    :param n_jobs: folds fitted concurrently on a thread pool.

    :rtype: :class:`CVResult`
    :returns: the minimizing ``lambda`` and the per-``lambda`` curves.

    :raises: :class:`~varsel.exceptions.FoldDegenerate` if a training fold
             still cannot be fit after one reshuffle.
    """
    n = data.n
    if n_folds < 2 or n < n_folds:
        raise ValueError("Pass 2 <= n_folds <= n")
    rng = _make_rng(seed)
    for attempt in range(2):
        folds = assign_folds(n, n_folds, rng)
        if all(_trainable(data.family, data.y[folds != k]) for k in range(n_folds)):
            break
        _LOGGER.warning(
            "Degenerate training fold; reshuffling (attempt %d)", attempt + 1
        )
    else:
        raise FoldDegenerate(
            "A training fold has a degenerate response", {"n_folds": n_folds}
        )

    def _one(fold):
        return _fold_losses(data, path, folds, fold, tol, max_sweeps)

    if n_jobs > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=n_jobs) as pool:
            losses = np.array(list(pool.map(_one, range(n_folds))))
    else:
        losses = np.array([_one(fold) for fold in range(n_folds)])

    cv_mean = losses.mean(axis=0)
    cv_se = losses.std(axis=0, ddof=1) / math.sqrt(n_folds)
    index = int(np.argmin(cv_mean))
    return CVResult(
        lambda_min=float(path.lambdas[index]),
        index_min=index,
        cv_mean=cv_mean,
        cv_se=cv_se,
        fold_assignment=folds,
        selected=path.supports[index],
        lambdas=path.lambdas,
    )


def _penalized_fit(data, path, index):
    spec = path.supports[index]
    beta = path.coefs[index, list(spec.columns)]
    value = loglik(data, spec, path.intercepts[index], beta)
    sigma2 = None
    if data.family is Family.GAUSSIAN:
        residual = data.y - path.intercepts[index] - data.X @ path.coefs[index]
        sigma2 = float(np.mean(residual ** 2))
    return FittedModel(
        spec=spec,
        family=data.family,
        beta0=float(path.intercepts[index]),
        beta=beta,
        loglik=value,
        k=spec.size + 1 + data.family.extra_params,
        converged=bool(path.converged[index]),
        sigma2_hat=sigma2,
    )


def lasso_select_ic(data, path, criterion, refit=True):
    """Pick a model on the path with an information criterion.

    By default every distinct support on the path is refit by unpenalized
    maximum likelihood and scored. With ``refit=False`` each ``lambda`` is
    scored with the log-likelihood at its penalized coefficients and
    ``k = |support| + 1`` (+1 for σ² in Gaussian models).

    Ties go to the smaller support, then to the larger ``lambda``.

    :type path: :class:`LassoPath`
    :param path: path computed on ``data``.

    :type criterion: :class:`~varsel.criteria.Criterion` or str
    :param criterion: AIC or BIC.

    :type refit: bool
    :param refit: score refit ML estimates (default) or penalized ones.

    :rtype: :class:`~varsel.search.SearchResult`
    :returns: the selected model; ``trace`` lists every candidate scored.

    :raises: :class:`~varsel.exceptions.AllModelsDegenerate`.
    """
    criterion = Criterion.from_name(criterion)
    if refit:
        candidates = path.distinct_supports()
    else:
        candidates = list(enumerate(path.supports))

    best = None
    trace = []
    skipped = []
    for order, (index, spec) in enumerate(candidates):
        try:
            if refit:
                fitted = fit(data, spec, warn=False)
            else:
                fitted = _penalized_fit(data, path, index)
        except FitError as exc:
            _LOGGER.debug("Skipping path support %s: %s", spec.bits, exc)
            skipped.append(spec)
            trace.append((spec, math.inf))
            continue
        if not math.isfinite(fitted.loglik) or (refit and not fitted.converged):
            _LOGGER.debug("Skipping path support %s: no finite MLE", spec.bits)
            skipped.append(spec)
            trace.append((spec, math.inf))
            continue
        value = score(criterion, fitted.loglik, fitted.k, data.n)
        trace.append((spec, value))
        key = (value, spec.size, order)
        if best is None or key < best[0]:
            best = (key, fitted)

    if best is None:
        raise AllModelsDegenerate(
            "No model on the path could be fit", {"candidates": len(candidates)}
        )
    return SearchResult(
        best=best[1],
        best_score=best[0][0],
        n_models_evaluated=len(candidates),
        criterion=criterion,
        trace=tuple(trace),
        skipped=tuple(skipped),
    )
