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

"""Monte-Carlo benchmark runner.

The unit of work is one ``(cell, replicate)`` pair: the dataset is
generated once from its counter-based seed and every configured method
runs on it. Units are independent, so they are spread over a process pool
and their rows funneled through a single writer in the parent process.

Files written to the output directory:

* ``manifest.json``: resolved configuration.
* ``replicates.csv``: one row per ``(cell, method, replicate)``.
* ``summary.csv``: :func:`~varsel.metrics.aggregate` per cell and method.
* ``timings.csv``: wall time per ``(cell, method, replicate)``.

While a run is incomplete, rows accumulate in ``replicates.partial.csv``
next to a ``RESUME`` marker; ``run_benchmark(..., resume=True)`` picks up
from there.
"""

import concurrent.futures
import csv
import dataclasses
import json
import logging
import math
import multiprocessing
import os
import time

import pandas as pd

from varsel.config import MANIFEST_NAME
from varsel.dataset import ModelSpec
from varsel.exceptions import ConfigInvalid
from varsel.exceptions import VarselError
from varsel.methods import METHOD_NAMES
from varsel.metrics import aggregate
from varsel.metrics import replicate_metrics
from varsel.selector import Selector
from varsel.simgen import Study
from varsel.simgen import simulate


_LOGGER = logging.getLogger(__name__)

REPLICATES_NAME = "replicates.csv"
SUMMARY_NAME = "summary.csv"
TIMINGS_NAME = "timings.csv"
PARTIAL_NAME = "replicates.partial.csv"
RESUME_NAME = "RESUME"

CELL_COLUMNS = ("study", "family", "p", "n", "rho", "sigma2")
REPLICATE_COLUMNS = CELL_COLUMNS + (
    "method",
    "replicate",
    "selected",
    "correct",
    "recall",
    "fdr",
    "is_null",
)
SUMMARY_COLUMNS = CELL_COLUMNS + (
    "cohens_f",
    "method",
    "n_replicates",
    "cir",
    "recall",
    "fdr",
    "pooled_fdr",
    "n_null_selected",
)
TIMING_COLUMNS = CELL_COLUMNS + ("method", "replicate", "wall_time")
PARTIAL_COLUMNS = ("cell",) + REPLICATE_COLUMNS + ("wall_time",)
NA = "NA"


def _format(value):
    """Deterministic text for CSV cells."""
    if value is None:
        return NA
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclasses.dataclass(frozen=True)
class RunRecord(object):
    """Outcome of one method on one replicate of one cell.

    :type selected: str
    :param selected: bit string of the selected support, ``x1`` first.

    :type wall_time: float
    :param wall_time: seconds spent by the method (timings only).
    """

    study: str
    family: str
    p: int
    n: int
    rho: float
    sigma2: float
    method: str
    replicate: int
    selected: str
    correct: bool
    recall: float
    fdr: float
    is_null: bool
    wall_time: float = 0.0
    cell: int = 0

    def to_row(self):
        """Text row keyed by :data:`PARTIAL_COLUMNS`."""
        return {name: _format(getattr(self, name)) for name in PARTIAL_COLUMNS}

    @classmethod
    def from_row(cls, row):
        """Factory: parse a ``replicates.csv`` (or partial) row.

        :raises: ``KeyError`` if a required column is missing.
        """
        return cls(
            study=row["study"],
            family=row["family"],
            p=int(row["p"]),
            n=int(row["n"]),
            rho=float(row["rho"]),
            sigma2=float(row["sigma2"]),
            method=row["method"],
            replicate=int(row["replicate"]),
            selected=row["selected"],
            correct=row["correct"] == "1",
            recall=float(row["recall"]),
            fdr=float(row["fdr"]),
            is_null=row["is_null"] == "1",
            wall_time=float(row.get("wall_time", 0.0)),
            cell=int(row.get("cell", 0)),
        )


def run_unit(config, cell, replicate):
    """Generate one replicate of ``cell`` and run every method on it.

    :type config: :class:`~varsel.config.BenchmarkConfig`
    :param config: resolved configuration.

    :type cell: :class:`~varsel.config.Cell`
    :param cell: grid point.

    :type replicate: int
    :param replicate: replicate index within the cell.

    :rtype: list of :class:`RunRecord`
    :returns: one record per configured method, in configuration order.
    """
    setting = config.setting(cell, replicate)
    data = simulate(setting)
    seed = config.unit_seed(cell, replicate)
    selector = Selector(
        data,
        ga_config=config.ga.replace(seed=seed),
        n_lambda=config.n_lambda,
        n_folds=config.n_folds,
        seed=seed,
        direction=config.direction,
        max_exhaustive_p=config.max_exhaustive_p,
    )
    records = []
    for method in config.method_specs():
        started = time.perf_counter()
        try:
            selected = selector.run(method).spec
        except VarselError as exc:
            _LOGGER.warning(
                "%s failed on cell %d replicate %d, recording the null model: %s",
                method.name,
                cell.index,
                replicate,
                exc,
            )
            selected = ModelSpec.null(config.p)
        elapsed = time.perf_counter() - started
        metrics = replicate_metrics(selected, setting.true_support)
        records.append(
            RunRecord(
                study=config.study.value,
                family=config.family.value,
                p=config.p,
                n=cell.n,
                rho=cell.rho,
                sigma2=cell.sigma2,
                method=method.name,
                replicate=replicate,
                selected=selected.bits,
                correct=metrics.correct,
                recall=metrics.recall,
                fdr=metrics.fdr,
                is_null=metrics.is_null,
                wall_time=elapsed,
                cell=cell.index,
            )
        )
    return records


def _read_partial(path, n_methods):
    """Rows of fully completed units from a partial file.

    A last line cut short by a hard kill (no trailing newline or missing
    fields) is dropped together with the rest of its unit.
    """
    if os.path.getsize(path) == 0:
        return {}
    with open(path, "rb") as handle:
        handle.seek(-1, os.SEEK_END)
        torn = handle.read(1) != b"\n"
    frame = read_text_csv(path)
    if torn and len(frame):
        frame = frame.iloc[:-1]
    complete = frame.dropna()
    if len(complete) < len(frame):
        _LOGGER.warning(
            "Dropping %d incomplete rows from %s", len(frame) - len(complete), path
        )
    by_unit = {}
    for row in complete.to_dict("records"):
        by_unit.setdefault((int(row["cell"]), int(row["replicate"])), []).append(row)
    return {
        unit: unit_rows
        for unit, unit_rows in by_unit.items()
        if len(unit_rows) == n_methods
    }


def _comparable(resolved):
    resolved = dict(resolved)
    resolved.pop("workers", None)
    resolved.pop("output", None)
    return resolved


def _check_resumable(config, directory):
    path = os.path.join(directory, MANIFEST_NAME)
    if not os.path.exists(path):
        return
    with open(path) as handle:
        previous = json.load(handle).get("config", {})
    if _comparable(previous) != _comparable(config.to_dict()):
        raise ConfigInvalid(
            [(None, "configuration differs from the manifest of the run to resume")],
            source=path,
        )


def _sort_frame(frame, key_columns):
    order = {name: index for index, name in enumerate(METHOD_NAMES)}
    keys = pd.DataFrame(
        {
            "study": frame["study"],
            "family": frame["family"],
            "p": frame["p"].astype(int),
            "n": frame["n"].astype(int),
            "rho": frame["rho"].astype(float),
            "sigma2": frame["sigma2"].astype(float),
            "method": frame["method"].map(order),
        }
    )
    for column in key_columns:
        keys[column] = frame[column].astype(int)
    columns = list(CELL_COLUMNS) + ["method"] + list(key_columns)
    ordered = keys.sort_values(columns, kind="mergesort").index
    return frame.loc[ordered].reset_index(drop=True)


def summarize(frame):
    """Aggregate replicate rows into summary rows.

    :type frame: :class:`pandas.DataFrame`
    :param frame: ``replicates.csv`` contents read as text.

    :rtype: :class:`pandas.DataFrame`
    :returns: one text row per cell and method, in :data:`SUMMARY_COLUMNS`.
    """
    rows = []
    group_columns = list(CELL_COLUMNS) + ["method"]
    for key, group in frame.groupby(group_columns, sort=False):
        first = dict(zip(group_columns, key))
        p = int(first["p"])
        truth = Study.from_name(first["study"]).default_support(p)
        summary = aggregate(
            replicate_metrics(ModelSpec.from_bits(bits), truth)
            for bits in group["selected"]
        )
        sigma2 = float(first["sigma2"])
        cohens_f = None
        if first["family"] == "gaussian":
            cohens_f = 1.0 / math.sqrt(sigma2)
        row = dict(first)
        row.update(
            cohens_f=_format(cohens_f),
            n_replicates=_format(summary.n_replicates),
            cir=_format(summary.cir),
            recall=_format(summary.recall),
            fdr=_format(summary.fdr),
            pooled_fdr=_format(summary.pooled_fdr),
            n_null_selected=_format(summary.n_null_selected),
        )
        rows.append(row)
    return pd.DataFrame(rows, columns=list(SUMMARY_COLUMNS))


def read_text_csv(path):
    """Read a results CSV keeping every cell as text (``NA`` included)."""
    return pd.read_csv(path, dtype=str, keep_default_na=False)


def _finalize(directory):
    partial = read_text_csv(os.path.join(directory, PARTIAL_NAME))
    partial = _sort_frame(partial, ["replicate"])
    replicates_path = os.path.join(directory, REPLICATES_NAME)
    partial[list(REPLICATE_COLUMNS)].to_csv(replicates_path, index=False)
    partial[list(TIMING_COLUMNS)].to_csv(
        os.path.join(directory, TIMINGS_NAME), index=False
    )
    summary = summarize(partial[list(REPLICATE_COLUMNS)])
    summary.to_csv(os.path.join(directory, SUMMARY_NAME), index=False)
    os.remove(os.path.join(directory, PARTIAL_NAME))
    os.remove(os.path.join(directory, RESUME_NAME))
    _LOGGER.info(
        "Wrote %d replicate rows and %d summary rows to %s",
        len(partial),
        len(summary),
        directory,
    )


def _execute(config, units, workers, sink):
    if workers <= 1:
        for cell, replicate in units:
            sink(run_unit(config, cell, replicate))
        return
    context = multiprocessing.get_context("spawn")
    pool = concurrent.futures.ProcessPoolExecutor(
        max_workers=workers, mp_context=context
    )
    futures = [
        pool.submit(run_unit, config, cell, replicate) for cell, replicate in units
    ]
    try:
        for future in concurrent.futures.as_completed(futures):
            sink(future.result())
    except BaseException:
        for future in futures:
            future.cancel()
        pool.shutdown(wait=False)
        raise
    pool.shutdown(wait=True)


def run_benchmark(config, resume=False, workers=None, output=None):
    """Run every ``(cell, method, replicate)`` of ``config``.

    :type config: :class:`~varsel.config.BenchmarkConfig`
    :param config: resolved configuration.

    :type resume: bool
    :param resume: keep completed units of an interrupted run in the output
                   directory instead of starting over.

    :type workers: int
    :param workers: (Optional) override of ``config.workers``.

    :type output: str
    :param output: (Optional) override of ``config.output``.

    :rtype: str
    :returns: the results directory.

    :raises: :class:`~varsel.exceptions.ConfigInvalid` when resuming with a
             configuration that differs from the interrupted run's;
             ``KeyboardInterrupt`` after flushing completed units.
    """
    if workers is not None:
        config = config.replace(workers=workers)
    if output is not None:
        config = config.replace(output=output)
    directory = config.output
    os.makedirs(directory, exist_ok=True)
    partial_path = os.path.join(directory, PARTIAL_NAME)
    marker_path = os.path.join(directory, RESUME_NAME)
    n_methods = len(config.methods)

    done = {}
    if resume and os.path.exists(partial_path):
        _check_resumable(config, directory)
        done = _read_partial(partial_path, n_methods)
        _LOGGER.info("Resuming: %d completed units kept", len(done))
    elif resume:
        _LOGGER.info("Nothing to resume in %s; starting a fresh run", directory)

    config.dump_manifest(directory)
    with open(marker_path, "w") as handle:
        handle.write("Interrupted run; rerun with --resume to continue.\n")

    units = [
        (cell, replicate)
        for cell in config.cells()
        for replicate in range(config.replicates)
        if (cell.index, replicate) not in done
    ]
    _LOGGER.info(
        "Running %d units (%d cells x %d replicates, %d methods) on %d workers",
        len(units),
        len(config.cells()),
        config.replicates,
        n_methods,
        config.workers,
    )

    with open(partial_path, "w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=PARTIAL_COLUMNS)
        writer.writeheader()
        for unit_rows in done.values():
            writer.writerows(unit_rows)
        handle.flush()

        def _sink(records):
            writer.writerows(record.to_row() for record in records)
            handle.flush()

        try:
            _execute(config, units, config.workers, _sink)
        except KeyboardInterrupt:
            handle.flush()
            _LOGGER.warning(
                "Interrupted; partial results kept in %s, rerun with --resume",
                partial_path,
            )
            raise

    _finalize(directory)
    return directory
