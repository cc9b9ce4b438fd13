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

"""Information criteria: AIC and BIC.

Both are penalized negative log-likelihoods, ``-2 * loglik + penalty * k``;
lower is better.
"""

import enum
import math

from varsel.exceptions import NonFiniteLoglik


class Criterion(enum.Enum):
    """Information criterion used to score a fitted model."""

    AIC = "AIC"
    BIC = "BIC"

    @classmethod
    def from_name(cls, name):
        """Case-insensitive lookup; accepts a :class:`Criterion` as is."""
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).upper())
        except ValueError:
            raise ValueError("Pass 'AIC' or 'BIC', got %r" % (name,))


def penalty(criterion, n):
    """Per-parameter penalty: 2 for AIC, ``log(n)`` for BIC.

    :type n: int
    :param n: sample size, at least 1.
    """
    if n < 1:
        raise ValueError("Pass a sample size >= 1")
    if Criterion.from_name(criterion) is Criterion.AIC:
        return 2.0
    return math.log(n)


def score(criterion, loglik, k, n):
    """``-2 * loglik + penalty(criterion, n) * k``.

    :raises: :class:`~varsel.exceptions.NonFiniteLoglik` if ``loglik`` is
             infinite or NaN.
    """
    if not math.isfinite(loglik):
        raise NonFiniteLoglik(
            "Cannot score a non-finite log-likelihood", {"loglik": loglik}
        )
    return -2.0 * loglik + penalty(criterion, n) * k


def evaluate(criterion, fit, n):
    """Score a fitted model.

    :type criterion: :class:`Criterion` or str
    :param criterion: AIC or BIC.

    :type fit: :class:`~varsel.model.FittedModel`
    :param fit: model to score.

    :type n: int
    :param n: number of observations the model was fit on.

    :rtype: float
    :returns: the criterion value.
    """
    return score(criterion, fit.loglik, fit.k, n)


def tie_key(spec, score_value):
    """Sort key implementing the selection order.

    Lower score wins; ties go to the smaller model, then to the
    lexicographically smaller bit string.
    """
    return (score_value,) + spec.sort_key()


def best_of(scored):
    """Pick the winner among ``(spec, score)`` pairs.

    :type scored: iterable of tuple
    :param scored: ``(ModelSpec, float)`` pairs; ``inf`` scores lose.

    :rtype: tuple
    :returns: the winning ``(spec, score)`` pair, or ``None`` when every
              score is infinite or the iterable is empty.
    """
    best = None
    for spec, value in scored:
        if not math.isfinite(value):
            continue
        if best is None or tie_key(spec, value) < tie_key(*best):
            best = (spec, value)
    return best
