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

"""Searches over the ``2**p`` model space.

Three strategies are provided: exhaustive enumeration, stepwise greedy
moves, and a genetic algorithm (GA). Each returns a :class:`SearchResult`
holding the criterion-optimal model found.
"""

import dataclasses
import logging
import math

import numpy as np

from varsel._helpers import _bools_to_mask
from varsel.criteria import Criterion
from varsel.criteria import evaluate
from varsel.criteria import tie_key
from varsel.dataset import ModelSpec
from varsel.exceptions import AllModelsDegenerate
from varsel.exceptions import FitError
from varsel.exceptions import SpaceTooLarge
from varsel.model import FittedModel
from varsel.model import fit


_LOGGER = logging.getLogger(__name__)

MAX_EXHAUSTIVE_P = 25
EXHAUSTIVE_FEASIBLE_P = 16
DIRECTIONS = ("both", "forward", "backward")


@dataclasses.dataclass(frozen=True)
class GAConfig(object):
    """Genetic-algorithm hyperparameters.

    :type population_size: int
    :param population_size: chromosomes per generation (>= 2).

    :type max_generations: int
    :param max_generations: hard cap on generations.

    :type stall_generations: int
    :param stall_generations: stop after this many generations without an
                              improvement of the best score.

    :type crossover_prob: float
    :param crossover_prob: probability that a child is produced by uniform
                           crossover rather than copied from one parent.

    :type mutation_prob_per_gene: float
    :param mutation_prob_per_gene: bit-flip probability; ``None`` means
                                   ``1/p``.

    :type elite_fraction: float
    :param elite_fraction: share of the population carried over unchanged.

    :type seed: int
    :param seed: seed of the search's own random generator.
    """

    population_size: int = 100
    max_generations: int = 200
    stall_generations: int = 20
    crossover_prob: float = 0.8
    mutation_prob_per_gene: float = None
    elite_fraction: float = 0.05
    seed: int = 0

    def __post_init__(self):
        for name in ("population_size", "max_generations", "stall_generations"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ValueError("Pass a positive integer for %s" % (name,))
        if self.population_size < 2:
            raise ValueError("Pass a population_size of at least 2")
        probabilities = [self.crossover_prob, self.elite_fraction]
        if self.mutation_prob_per_gene is not None:
            probabilities.append(self.mutation_prob_per_gene)
        for value in probabilities:
            if not 0.0 <= value <= 1.0:
                raise ValueError("Pass probabilities in [0, 1], got %r" % (value,))
        if self.elite_fraction * self.population_size < 1.0:
            raise ValueError("elite_fraction * population_size must be >= 1")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ValueError("Pass a non-negative integer seed")

    def mutation_rate(self, p):
        if self.mutation_prob_per_gene is None:
            return 1.0 / p
        return self.mutation_prob_per_gene

    @property
    def n_elite(self):
        return max(1, int(round(self.elite_fraction * self.population_size)))

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def to_dict(self):
        return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True, eq=False)
class SearchResult(object):
    """Outcome of a model-space search.

    :type best: :class:`~varsel.model.FittedModel`
    :param best: fit of the criterion-optimal model.

    :type best_score: float
    :param best_score: criterion value of ``best``.

    :type n_models_evaluated: int
    :param n_models_evaluated: distinct models whose fit was attempted.

    :type criterion: :class:`~varsel.criteria.Criterion`
    :param criterion: the criterion that was minimized.

    :type trace: tuple
    :param trace: ``(ModelSpec, score)`` per visited model in visiting
                  order, or ``None`` if not requested.

    :type skipped: tuple
    :param skipped: specs whose fit failed (rank deficient, degenerate,
                    not converged); they were scored ``inf``.

    :type n_iterations: int
    :param n_iterations: accepted stepwise moves or GA generations.

    :type history: tuple
    :param history: GA incumbent score after each generation.
    """

    best: FittedModel
    best_score: float
    n_models_evaluated: int
    criterion: Criterion
    trace: tuple = None
    skipped: tuple = ()
    n_iterations: int = 0
    history: tuple = ()

    @property
    def spec(self):
        return self.best.spec


class _Scorer(object):
    """Fit-and-score with a cache keyed by the spec bit set.

    :type mapper: callable
    :param mapper: (Optional) ``map``-like callable used to fit uncached
                   specs of a batch, e.g. ``ThreadPoolExecutor.map``. Cache
                   updates always happen on the calling thread.
    """

    def __init__(self, data, criterion, keep_trace=False, mapper=None):
        self.data = data
        self.criterion = Criterion.from_name(criterion)
        self._cache = {}
        self._mapper = mapper or map
        self.skipped = []
        self.trace = [] if keep_trace else None

    def _fit_one(self, spec):
        try:
            fitted = fit(self.data, spec, warn=False)
        except FitError as exc:
            _LOGGER.debug("Skipping %s: %s", spec.bits, exc)
            return spec, None, math.inf
        if not fitted.converged:
            _LOGGER.debug("Skipping %s: separated, no finite MLE", spec.bits)
            return spec, None, math.inf
        return spec, fitted, evaluate(self.criterion, fitted, self.data.n)

    def _store(self, spec, fitted, value):
        self._cache[spec.mask] = (fitted, value)
        if fitted is None:
            self.skipped.append(spec)
        if self.trace is not None:
            self.trace.append((spec, value))

    def score(self, spec):
        if spec.mask not in self._cache:
            self._store(*self._fit_one(spec))
        return self._cache[spec.mask][1]

    def score_many(self, specs):
        pending = []
        seen = set()
        for spec in specs:
            if spec.mask not in self._cache and spec.mask not in seen:
                seen.add(spec.mask)
                pending.append(spec)
        for outcome in self._mapper(self._fit_one, pending):
            self._store(*outcome)
        return [self._cache[spec.mask][1] for spec in specs]

    def fitted(self, spec):
        return self._cache[spec.mask][0]

    @property
    def n_evaluated(self):
        return len(self._cache)

    def result(self, spec, value, **kwargs):
        if spec is None or not math.isfinite(value):
            raise AllModelsDegenerate(
                "No candidate model could be fit",
                {"evaluated": self.n_evaluated, "skipped": len(self.skipped)},
            )
        return SearchResult(
            best=self.fitted(spec),
            best_score=value,
            n_models_evaluated=self.n_evaluated,
            criterion=self.criterion,
            trace=tuple(self.trace) if self.trace is not None else None,
            skipped=tuple(self.skipped),
            **kwargs
        )


def _better(spec, value, incumbent):
    return incumbent is None or tie_key(spec, value) < tie_key(*incumbent)


def exhaustive_search(data, criterion, max_p=MAX_EXHAUSTIVE_P, keep_trace=False):
    """Fit and score all ``2**p`` models.

    :type data: :class:`~varsel.dataset.Dataset`
    :param data: the dataset.

    :type criterion: :class:`~varsel.criteria.Criterion` or str
    :param criterion: AIC or BIC.

    :type max_p: int
    :param max_p: refuse to enumerate beyond this many regressors.

    :type keep_trace: bool
    :param keep_trace: record every ``(spec, score)``.

    :rtype: :class:`SearchResult`
    :returns: the minimizer under the tie rule.

    :raises: :class:`~varsel.exceptions.SpaceTooLarge`,
             :class:`~varsel.exceptions.AllModelsDegenerate`.
    """
    p = data.p
    if p > max_p:
        raise SpaceTooLarge(
            "Exhaustive search over 2**%d models refused" % (p,), {"max_p": max_p}
        )
    scorer = _Scorer(data, criterion, keep_trace=keep_trace)
    incumbent = None
    for mask in range(1 << p):
        spec = ModelSpec(p, mask)
        value = scorer.score(spec)
        if math.isfinite(value) and _better(spec, value, incumbent):
            incumbent = (spec, value)
    if incumbent is None:
        return scorer.result(None, math.inf)
    return scorer.result(*incumbent)


def stepwise_search(
    data, criterion, start=None, direction="both", keep_trace=False, mapper=None
):
    """Greedy search by single-variable additions and deletions.

    Every sweep scores all neighbours of the current model allowed by
    ``direction`` and moves to the best one only if it strictly lowers
    the criterion.

    :type start: :class:`~varsel.dataset.ModelSpec`
    :param start: (Optional) initial model. Defaults to the null model, or
                  to the full model when ``direction="backward"``.

    :type direction: str
    :param direction: ``"both"`` (stepwise), ``"forward"`` (additions only)
                      or ``"backward"`` (deletions only).

    :type mapper: callable
    :param mapper: (Optional) ``map``-like callable to fit a sweep's
                   neighbours concurrently.

    :rtype: :class:`SearchResult`
    :returns: the local optimum reached; ``n_iterations`` counts accepted
              moves.
    """
    if direction not in DIRECTIONS:
        raise ValueError("Pass a direction in %s" % (DIRECTIONS,))
    p = data.p
    if start is None:
        start = ModelSpec.full(p) if direction == "backward" else ModelSpec.null(p)
    data.check_spec(start)

    scorer = _Scorer(data, criterion, keep_trace=keep_trace, mapper=mapper)
    current, current_score = start, scorer.score(start)
    moves = 0
    while True:
        neighbours = [
            current.toggle(column)
            for column in range(p)
            if direction == "both" or ((column in current) == (direction == "backward"))
        ]
        winner = None
        for spec, value in zip(neighbours, scorer.score_many(neighbours)):
            if math.isfinite(value) and _better(spec, value, winner):
                winner = (spec, value)
        if winner is None or not winner[1] < current_score:
            break
        current, current_score = winner
        moves += 1
        _LOGGER.debug(
            "Stepwise move %d -> %s (%.6f)", moves, current.bits, current_score
        )
        if moves > p * p + p:
            raise RuntimeError("Stepwise search failed to terminate")
    return scorer.result(current, current_score, n_iterations=moves)


def _ranking_probabilities(size):
    weights = np.arange(size, 0, -1, dtype=float)
    return weights / weights.sum()


def ga_search(
    data,
    criterion,
    config=None,
    initial_population=None,
    keep_trace=False,
    mapper=None,
):
    """Genetic-algorithm search over binary chromosomes.

    Chromosome bit ``j`` includes regressor ``x{j+1}``; fitness is the
    negated criterion. Parents are drawn with linear rank-based
    probabilities, children are produced by uniform crossover (with
    probability ``crossover_prob``) and per-gene bit-flip mutation, and the
    top ``elite_fraction`` of each generation survives unchanged.

    :type config: :class:`GAConfig`
    :param config: (Optional) hyperparameters; defaults to ``GAConfig()``.

    :type initial_population: iterable of :class:`~varsel.dataset.ModelSpec`
    :param initial_population: (Optional) chromosomes placed at the top of
                               the first generation; the rest are fair coin
                               flips.

    :type mapper: callable
    :param mapper: (Optional) ``map``-like callable to fit a generation
                   concurrently.

    :rtype: :class:`SearchResult`
    :returns: the best model ever visited; ``history`` holds the incumbent
              score after each generation.
    """
    p = data.p
    if p < 1:
        raise ValueError("Pass a dataset with at least one regressor")
    config = config or GAConfig()
    rng = np.random.default_rng(config.seed)
    size = config.population_size
    mutation = config.mutation_rate(p)

    population = rng.random((size, p)) < 0.5
    for row, spec in enumerate(list(initial_population or ())[:size]):
        data.check_spec(spec)
        population[row] = spec.as_bools()

    scorer = _Scorer(data, criterion, keep_trace=keep_trace, mapper=mapper)
    probabilities = _ranking_probabilities(size)

    def _evaluate(chromosomes):
        specs = [ModelSpec(p, _bools_to_mask(row)) for row in chromosomes]
        return specs, scorer.score_many(specs)

    specs, scores = _evaluate(population)
    incumbent = None
    for spec, value in zip(specs, scores):
        if math.isfinite(value) and _better(spec, value, incumbent):
            incumbent = (spec, value)
    history = [incumbent[1] if incumbent else math.inf]

    generation = 0
    stall = 0
    while generation < config.max_generations and stall < config.stall_generations:
        order = sorted(range(size), key=lambda i: tie_key(specs[i], scores[i]))
        ranked = population[order]
        children = [ranked[i].copy() for i in range(config.n_elite)]
        while len(children) < size:
            first, second = rng.choice(size, size=2, p=probabilities)
            if rng.random() < config.crossover_prob:
                take_first = rng.random(p) < 0.5
                child = np.where(take_first, ranked[first], ranked[second])
            else:
                child = ranked[first].copy()
            child ^= rng.random(p) < mutation
            children.append(child)
        population = np.array(children, dtype=bool)
        specs, scores = _evaluate(population)
        generation += 1

        previous = incumbent[1] if incumbent else math.inf
        for spec, value in zip(specs, scores):
            if math.isfinite(value) and _better(spec, value, incumbent):
                incumbent = (spec, value)
        current = incumbent[1] if incumbent else math.inf
        stall = 0 if current < previous else stall + 1
        history.append(current)
        _LOGGER.debug("GA generation %d best %.6f", generation, current)

    if incumbent is None:
        return scorer.result(None, math.inf)
    return scorer.result(
        incumbent[0], incumbent[1], n_iterations=generation, history=tuple(history)
    )


def auto_search(data, criterion, config=None, feasible_p=EXHAUSTIVE_FEASIBLE_P):
    """Exhaustive search when ``p < feasible_p``, otherwise the GA."""
    if data.p < feasible_p:
        return exhaustive_search(data, criterion)
    return ga_search(data, criterion, config=config)
