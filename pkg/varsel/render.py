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

"""Figure panels from ``summary.csv``.

Each ``(study, family, metric)`` gets one SVG holding a grid of panels:
rows are error variances, columns are correlations, the x axis is the
(log-scaled) sample size and each method is one line. FDR panels carry
dashed reference lines at 0.05 and 0.10; NA values leave gaps.
"""

import itertools
import logging
import math
import os
import warnings

import matplotlib
from matplotlib.figure import Figure
import pandas as pd

from varsel.bench import NA
from varsel.bench import SUMMARY_NAME
from varsel.bench import read_text_csv
from varsel.exceptions import MissingCellsWarning
from varsel.methods import METHOD_NAMES


_LOGGER = logging.getLogger(__name__)

METRICS = ("cir", "recall", "fdr")
FDR_REFERENCE_LINES = (0.05, 0.10)
PLOTTED_VALUES_NAME = "plotted_values.csv"
PLOTTED_COLUMNS = ("study", "family", "metric", "sigma2", "rho", "n", "method", "value")
_LABELS = {"cir": "CIR", "recall": "Recall", "fdr": "FDR"}


def _value(text):
    return math.nan if text == NA else float(text)


def _sorted_values(frame, column, cast):
    return sorted(set(frame[column]), key=cast)


def _missing_cells(group, sigma2s, rhos, ns, methods):
    present = set(zip(group["sigma2"], group["rho"], group["n"], group["method"]))
    return [
        cell
        for cell in itertools.product(sigma2s, rhos, ns, methods)
        if cell not in present
    ]


def _panel_grid(group, metric, sigma2s, rhos, ns, methods, title):
    lookup = {
        (row.sigma2, row.rho, row.n, row.method): _value(getattr(row, metric))
        for row in group.itertuples(index=False)
    }
    figure = Figure(figsize=(2.6 * len(rhos) + 1.5, 2.2 * len(sigma2s) + 0.8))
    axes = figure.subplots(
        len(sigma2s), len(rhos), squeeze=False, sharex=True, sharey=True
    )
    plotted = []
    for (i, sigma2), (j, rho) in itertools.product(enumerate(sigma2s), enumerate(rhos)):
        axis = axes[i][j]
        for method in methods:
            xs = [int(n) for n in ns]
            ys = [lookup.get((sigma2, rho, n, method), math.nan) for n in ns]
            for n, value in zip(ns, ys):
                if (sigma2, rho, n, method) in lookup:
                    plotted.append((metric, sigma2, rho, n, method, value))
            if any(math.isfinite(value) for value in ys):
                axis.plot(xs, ys, marker="o", markersize=3, label=method)
        if metric == "fdr":
            for level in FDR_REFERENCE_LINES:
                axis.axhline(level, color="gray", linestyle="--", linewidth=0.8)
        axis.set_xscale("log")
        axis.set_ylim(-0.02, 1.02)
        axis.set_title("sigma2=%s, rho=%s" % (sigma2, rho), fontsize=8)
        if i == len(sigma2s) - 1:
            axis.set_xlabel("n")
        if j == 0:
            axis.set_ylabel(_LABELS[metric])
    handles, labels = [], []
    for axis in axes.flat:
        for handle, label in zip(*axis.get_legend_handles_labels()):
            if label not in labels:
                handles.append(handle)
                labels.append(label)
    if handles:
        figure.legend(handles, labels, loc="upper right", fontsize=7)
    figure.suptitle(title)
    return figure, plotted


def render_figures(directory, metrics=METRICS):
    """Render the panel grids of a results directory.

    :type directory: str
    :param directory: folder holding ``summary.csv``.

    :type metrics: tuple of str
    :param metrics: (Optional) subset of ``("cir", "recall", "fdr")``.

    :rtype: list of str
    :returns: paths of the SVG files, then of ``plotted_values.csv``.

    :raises: ``FileNotFoundError`` without ``summary.csv``; warns
             :class:`~varsel.exceptions.MissingCellsWarning` when grid
             points are absent.
    """
    for metric in metrics:
        if metric not in METRICS:
            raise ValueError("Pass metrics from %s, got %r" % (METRICS, metric))
    summary = read_text_csv(os.path.join(directory, SUMMARY_NAME))
    order = {name: index for index, name in enumerate(METHOD_NAMES)}
    written = []
    rows = []
    for (study, family), group in summary.groupby(["study", "family"], sort=True):
        sigma2s = _sorted_values(group, "sigma2", float)
        rhos = _sorted_values(group, "rho", float)
        ns = _sorted_values(group, "n", int)
        methods = sorted(set(group["method"]), key=lambda name: order.get(name, 99))
        missing = _missing_cells(group, sigma2s, rhos, ns, methods)
        if missing:
            warnings.warn(
                "%s/%s: %d grid points missing: %s"
                % (
                    study,
                    family,
                    len(missing),
                    "; ".join("sigma2=%s rho=%s n=%s %s" % cell for cell in missing),
                ),
                MissingCellsWarning,
            )
        for metric in metrics:
            title = "%s %s: %s" % (study, family, _LABELS[metric])
            with matplotlib.rc_context({"svg.hashsalt": "varsel"}):
                figure, plotted = _panel_grid(
                    group, metric, sigma2s, rhos, ns, methods, title
                )
                path = os.path.join(directory, "%s_%s_%s.svg" % (study, family, metric))
                figure.savefig(path, format="svg", metadata={"Date": None})
            written.append(path)
            _LOGGER.info("Wrote %s", path)
            for metric_name, sigma2, rho, n, method, value in plotted:
                rows.append(
                    {
                        "study": study,
                        "family": family,
                        "metric": metric_name,
                        "sigma2": sigma2,
                        "rho": rho,
                        "n": n,
                        "method": method,
                        "value": NA if math.isnan(value) else repr(value),
                    }
                )
    values_path = os.path.join(directory, PLOTTED_VALUES_NAME)
    pd.DataFrame(rows, columns=list(PLOTTED_COLUMNS)).to_csv(values_path, index=False)
    written.append(values_path)
    return written
