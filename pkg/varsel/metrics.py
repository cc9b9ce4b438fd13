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

"""Selection accuracy against a known true model.

The intercept is never counted. A replicate is *correct* when the selected
support equals the truth exactly.
"""

import dataclasses
import math

from varsel.exceptions import TruthEmpty

# Share of null selections above which the aggregate FDR is reported as NA.
NULL_SHARE_LIMIT = 0.5


@dataclasses.dataclass(frozen=True)
class ReplicateMetrics(object):
    """Accuracy of one selected model.

    ``fdr`` is 0 for an empty selection.
    """

    correct: bool
    recall: float
    fdr: float
    is_null: bool
    n_selected: int = 0
    n_false: int = 0


@dataclasses.dataclass(frozen=True)
class MetricsSummary(object):
    """Aggregate over replicates of one cell and method.

    :type cir: float
    :param cir: share of replicates selecting exactly the true model.

    :type recall: float
    :param recall: mean recall.

    :type fdr: float
    :param fdr: mean per-replicate FDR, or ``None`` (NA) when the null model
                was selected in more than half of the replicates.

    :type n_replicates: int
    :param n_replicates: replicates aggregated.

    :type n_null_selected: int
    :param n_null_selected: replicates that selected the null model.

    :type pooled_fdr: float
    :param pooled_fdr: false selections over all selections, pooled across
                       replicates (0 when nothing was selected).
    """

    cir: float
    recall: float
    fdr: float
    n_replicates: int
    n_null_selected: int
    pooled_fdr: float = 0.0

    @property
    def fdr_is_na(self):
        return self.fdr is None


def replicate_metrics(selected, truth):
    """Compare a selected model with the true model.

    :type selected: :class:`~varsel.dataset.ModelSpec`
    :param selected: the chosen support.

    :type truth: :class:`~varsel.dataset.ModelSpec`
    :param truth: the true support, of the same width.

    :rtype: :class:`ReplicateMetrics`
    :returns: correctness, recall, FDR and null flag.

    :raises: :class:`~varsel.exceptions.TruthEmpty` if ``truth`` is empty;
             ``ValueError`` on a width mismatch.
    """
    if selected.width != truth.width:
        raise ValueError(
            "Selected width %d differs from truth width %d"
            % (selected.width, truth.width)
        )
    if truth.is_null:
        raise TruthEmpty("Recall is undefined for an empty true model")
    n_selected = selected.size
    n_true_positive = bin(selected.mask & truth.mask).count("1")
    n_false = n_selected - n_true_positive
    return ReplicateMetrics(
        correct=selected.mask == truth.mask,
        recall=n_true_positive / truth.size,
        fdr=n_false / n_selected if n_selected else 0.0,
        is_null=n_selected == 0,
        n_selected=n_selected,
        n_false=n_false,
    )


def aggregate(metrics):
    """Summarize replicate metrics of one cell and method.

    :type metrics: iterable of :class:`ReplicateMetrics`
    :param metrics: at least one replicate.

    :rtype: :class:`MetricsSummary`
    :returns: CIR, mean recall, mean FDR (NA under pervasive null
              selection) and pooled FDR.
    """
    metrics = list(metrics)
    if not metrics:
        raise ValueError("Pass at least one replicate")
    count = len(metrics)
    n_null = sum(1 for item in metrics if item.is_null)
    fdr = math.fsum(item.fdr for item in metrics) / count
    if n_null > NULL_SHARE_LIMIT * count:
        fdr = None
    n_selected = sum(item.n_selected for item in metrics)
    n_false = sum(item.n_false for item in metrics)
    return MetricsSummary(
        cir=sum(1 for item in metrics if item.correct) / count,
        recall=math.fsum(item.recall for item in metrics) / count,
        fdr=fdr,
        n_replicates=count,
        n_null_selected=n_null,
        pooled_fdr=n_false / n_selected if n_selected else 0.0,
    )
