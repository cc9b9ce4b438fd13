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

"""Benchmark configuration files.

A configuration is a commented YAML mapping, for example::

    # Study 1, exhaustive searches only
    study: S1_equicorr
    family: gaussian
    n: [50, 100, 200]
    rho: [0.0, 0.5]
    sigma2: 6.25
    methods: [BIC, AIC]
    replicates: 100
    seed: 2024
    output: results/s1
    workers: 4

Scalar grid values are promoted to one-element lists. Unknown keys are
errors, and every error is reported with the line it occurs on. The
resolved configuration is written to ``manifest.json``; a manifest can be
loaded back as a configuration.
"""

import dataclasses
import itertools
import json
import numbers
import os

import yaml

from varsel.exceptions import ConfigInvalid
from varsel.family import Family
from varsel.methods import EXHAUSTIVE
from varsel.methods import METHOD_NAMES
from varsel.methods import MethodSpec
from varsel.search import DIRECTIONS
from varsel.search import GAConfig
from varsel.search import MAX_EXHAUSTIVE_P
from varsel.simgen import SimSetting
from varsel.simgen import Study
from varsel.simgen import default_beta_scale
from varsel.simgen import mix_seed
from varsel.version import __version__

TOP_LEVEL_KEYS = (
    "study",
    "family",
    "p",
    "n",
    "rho",
    "sigma2",
    "methods",
    "replicates",
    "seed",
    "output",
    "workers",
    "beta_scale",
    "ga",
    "lasso",
    "stepwise",
    "max_exhaustive_p",
)
GA_KEYS = (
    "population_size",
    "max_generations",
    "stall_generations",
    "crossover_prob",
    "mutation_prob_per_gene",
    "elite_fraction",
)
LASSO_KEYS = ("n_lambda", "n_folds")
STEPWISE_KEYS = ("direction",)
MANIFEST_NAME = "manifest.json"
_GLM_SIGMA2 = (1.0,)


@dataclasses.dataclass(frozen=True)
class Cell(object):
    """One point of the ``sigma2 x rho x n`` grid."""

    index: int
    n: int
    rho: float
    sigma2: float


@dataclasses.dataclass(frozen=True)
class BenchmarkConfig(object):
    """Fully resolved benchmark configuration.

    :type study: :class:`~varsel.simgen.Study`
    :param study: design family.

    :type family: :class:`~varsel.family.Family`
    :param family: response model.

    :type p: int
    :param p: number of candidate regressors.

    :type n: tuple of int
    :param n: sample-size grid.

    :type rho: tuple of float
    :param rho: correlation grid.

    :type sigma2: tuple of float
    :param sigma2: error-variance grid (one dummy value for GLMs).

    :type methods: tuple of str
    :param methods: method names in run order.

    :type replicates: int
    :param replicates: replicates per cell.

    :type seed: int
    :param seed: base seed of the counter-based scheme.

    :type output: str
    :param output: results directory.

    :type workers: int
    :param workers: worker processes.

    :type beta_scale: float
    :param beta_scale: effect multiplier on the true coefficients.
    """

    study: Study
    family: Family
    p: int
    n: tuple
    rho: tuple
    sigma2: tuple
    methods: tuple
    replicates: int = 100
    seed: int = 0
    output: str = "results"
    workers: int = 1
    beta_scale: float = 1.0
    ga: GAConfig = dataclasses.field(default_factory=GAConfig)
    n_lambda: int = 100
    n_folds: int = 10
    direction: str = "both"
    max_exhaustive_p: int = MAX_EXHAUSTIVE_P

    def cells(self):
        """Grid cells in canonical order (``sigma2``, then ``rho``, then ``n``)."""
        product = itertools.product(self.sigma2, self.rho, self.n)
        return [
            Cell(index, n, rho, sigma2)
            for index, (sigma2, rho, n) in enumerate(product)
        ]

    def method_specs(self):
        return [MethodSpec(name) for name in self.methods]

    def setting(self, cell, replicate):
        """Simulation setting of ``(cell, replicate)`` with its mixed seed."""
        return SimSetting(
            study=self.study,
            family=self.family,
            n=cell.n,
            p=self.p,
            rho=cell.rho,
            sigma2=cell.sigma2,
            true_support=self.study.default_support(self.p),
            beta_value=self.beta_scale,
            seed=mix_seed(self.seed, cell.index, replicate),
        )

    def unit_seed(self, cell, replicate):
        """Seed of the selection methods' own randomness (GA, CV folds)."""
        return mix_seed(self.seed, cell.index, replicate, 1)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def to_dict(self):
        """Resolved configuration in file layout (every default spelled out)."""
        ga = self.ga.to_dict()
        ga.pop("seed")
        return {
            "study": self.study.value,
            "family": self.family.value,
            "p": self.p,
            "n": list(self.n),
            "rho": list(self.rho),
            "sigma2": list(self.sigma2),
            "methods": list(self.methods),
            "replicates": self.replicates,
            "seed": self.seed,
            "output": self.output,
            "workers": self.workers,
            "beta_scale": self.beta_scale,
            "ga": ga,
            "lasso": {"n_lambda": self.n_lambda, "n_folds": self.n_folds},
            "stepwise": {"direction": self.direction},
            "max_exhaustive_p": self.max_exhaustive_p,
        }

    def manifest(self):
        """Self-describing run manifest; loadable by :func:`parse_config`."""
        return {
            "varsel_version": __version__,
            "config": self.to_dict(),
            "n_cells": len(self.cells()),
            "n_units": len(self.cells()) * self.replicates,
        }

    def dump_manifest(self, directory):
        path = os.path.join(directory, MANIFEST_NAME)
        with open(path, "w") as handle:
            json.dump(self.manifest(), handle, indent=2, sort_keys=True)
            handle.write("\n")
        return path


def _key_lines(node, prefix=""):
    """Map dotted key paths of a composed YAML node to 1-based lines."""
    lines = {}
    if isinstance(node, yaml.MappingNode):
        for key_node, value_node in node.value:
            path = prefix + str(key_node.value)
            lines[path] = key_node.start_mark.line + 1
            lines.update(_key_lines(value_node, path + "."))
    return lines


class _Checker(object):
    """Collect ``(line, message)`` diagnostics while reading a mapping."""

    def __init__(self, mapping, lines, prefix=""):
        self.mapping = mapping
        self.lines = lines
        self.prefix = prefix
        self.errors = []

    def line(self, key):
        return self.lines.get(self.prefix + key)

    def error(self, key, message):
        self.errors.append((self.line(key), "%s%s: %s" % (self.prefix, key, message)))

    def unknown(self, allowed):
        for key in self.mapping:
            if key not in allowed:
                self.error(str(key), "unknown key")

    def integer(self, key, default, minimum):
        value = self.mapping.get(key, default)
        if value is None:
            self.error(key, "is required")
        elif isinstance(value, bool) or not isinstance(value, int):
            self.error(key, "expected an integer, got %r" % (value,))
        elif value < minimum:
            self.error(key, "must be >= %d, got %d" % (minimum, value))
        else:
            return value
        return default

    def number(self, key, default):
        value = self.mapping.get(key, default)
        if isinstance(value, bool) or not isinstance(value, numbers.Real):
            self.error(key, "expected a number, got %r" % (value,))
            return default
        return float(value)

    def grid(self, key, kind, check, required=True, default=None):
        value = self.mapping.get(key, default)
        if value is None:
            if required:
                self.error(key, "is required")
            return ()
        if not isinstance(value, list):
            value = [value]
        if not value:
            self.error(key, "must not be empty")
            return ()
        items = []
        for item in value:
            if isinstance(item, bool) or not isinstance(item, kind):
                self.error(key, "expected %s values, got %r" % (kind.__name__, item))
                continue
            message = check(item)
            if message:
                self.error(key, message)
                continue
            if kind is numbers.Integral:
                item = int(item)
            elif kind is numbers.Real:
                item = float(item)
            items.append(item)
        if len(set(items)) != len(items):
            self.error(key, "contains duplicates")
        return tuple(items)

    def section(self, key, allowed):
        value = self.mapping.get(key)
        if value is None:
            return {}
        if not isinstance(value, dict):
            self.error(key, "expected a mapping")
            return {}
        nested = _Checker(value, self.lines, self.prefix + key + ".")
        nested.unknown(allowed)
        self.errors.extend(nested.errors)
        return value


def _check_n(value):
    if value < 1:
        return "sample sizes must be >= 1, got %r" % (value,)


def _check_rho(value):
    if not 0.0 <= value < 1.0:
        return "rho must be in [0, 1), got %r" % (value,)


def _check_sigma2(value):
    if not value > 0.0:
        return "sigma2 must be > 0, got %r" % (value,)


def _resolve(mapping, lines):
    checker = _Checker(mapping, lines)
    checker.unknown(TOP_LEVEL_KEYS)

    study = None
    try:
        study = Study.from_name(mapping.get("study"))
    except ValueError as exc:
        checker.error("study", str(exc))
    family = Family.GAUSSIAN
    try:
        family = Family.from_name(mapping.get("family", "gaussian"))
    except ValueError as exc:
        checker.error("family", str(exc))

    default_p = study.default_p if study else 1
    p = checker.integer("p", default_p, 1)
    n = checker.grid("n", numbers.Integral, _check_n)
    rho = checker.grid("rho", numbers.Real, _check_rho)
    if family is Family.GAUSSIAN:
        sigma2 = checker.grid("sigma2", numbers.Real, _check_sigma2)
    else:
        sigma2 = checker.grid(
            "sigma2", numbers.Real, _check_sigma2, default=list(_GLM_SIGMA2)
        )

    methods = []
    for name in checker.grid("methods", str, lambda item: None):
        try:
            methods.append(MethodSpec.from_name(name).name)
        except ValueError:
            checker.error(
                "methods",
                "unknown method %r; pass one of %s" % (name, ", ".join(METHOD_NAMES)),
            )

    replicates = checker.integer("replicates", 100, 1)
    seed = checker.integer("seed", 0, 0)
    workers = checker.integer("workers", 1, 1)
    max_exhaustive_p = checker.integer("max_exhaustive_p", MAX_EXHAUSTIVE_P, 1)
    output = mapping.get("output", "results")
    if not isinstance(output, str) or not output:
        checker.error("output", "expected a directory path")
        output = "results"

    beta_scale = mapping.get("beta_scale")
    if beta_scale is None:
        beta_scale = default_beta_scale(family, p)
    else:
        beta_scale = checker.number("beta_scale", 1.0)

    ga_section = checker.section("ga", GA_KEYS)
    ga = GAConfig()
    try:
        ga = GAConfig(**{key: ga_section[key] for key in GA_KEYS if key in ga_section})
    except (TypeError, ValueError) as exc:
        checker.error("ga", str(exc))

    lasso_section = checker.section("lasso", LASSO_KEYS)
    lasso_checker = _Checker(lasso_section, lines, "lasso.")
    n_lambda = lasso_checker.integer("n_lambda", 100, 1)
    n_folds = lasso_checker.integer("n_folds", 10, 2)
    checker.errors.extend(lasso_checker.errors)
    if n and n_folds > min(n):
        checker.error(
            "lasso", "n_folds=%d exceeds the smallest n=%d" % (n_folds, min(n))
        )

    direction = checker.section("stepwise", STEPWISE_KEYS).get("direction", "both")
    if direction not in DIRECTIONS:
        checker.errors.append(
            (
                lines.get("stepwise.direction"),
                "stepwise.direction: pass one of %s" % (", ".join(DIRECTIONS),),
            )
        )

    exhaustive = [name for name in methods if MethodSpec(name).strategy == EXHAUSTIVE]
    if exhaustive and p > max_exhaustive_p:
        checker.error(
            "methods",
            "exhaustive methods %s need p <= %d, got p=%d"
            % (", ".join(exhaustive), max_exhaustive_p, p),
        )

    if checker.errors:
        return None, checker.errors
    config = BenchmarkConfig(
        study=study,
        family=family,
        p=p,
        n=n,
        rho=rho,
        sigma2=sigma2,
        methods=tuple(methods),
        replicates=replicates,
        seed=seed,
        output=output,
        workers=workers,
        beta_scale=float(beta_scale),
        ga=ga,
        n_lambda=n_lambda,
        n_folds=n_folds,
        direction=direction,
        max_exhaustive_p=max_exhaustive_p,
    )
    return config, []


def parse_config(text, source=None):
    """Parse and validate configuration text (YAML, or a JSON manifest).

    :type text: str
    :param text: document contents.

    :type source: str
    :param source: (Optional) file name used in diagnostics.

    :rtype: :class:`BenchmarkConfig`
    :returns: the resolved configuration.

    :raises: :class:`~varsel.exceptions.ConfigInvalid` listing every
             problem with its line.
    """
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
        mapping = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        line = mark.line + 1 if mark is not None else None
        problem = getattr(exc, "problem", None) or str(exc)
        raise ConfigInvalid([(line, "malformed YAML: %s" % (problem,))], source)
    if not isinstance(mapping, dict):
        raise ConfigInvalid([(1, "expected a mapping at the top level")], source)

    lines = _key_lines(node)
    if "config" in mapping and "varsel_version" in mapping:
        mapping = mapping["config"]
        lines = {
            key[len("config."):]: line
            for key, line in lines.items()
            if key.startswith("config.")
        }
        if not isinstance(mapping, dict):
            raise ConfigInvalid([(None, "manifest config is not a mapping")], source)

    config, errors = _resolve(mapping, lines)
    if errors:
        errors = sorted(errors, key=lambda item: (item[0] or 0, item[1]))
        raise ConfigInvalid(errors, source)
    return config


def load_config(path):
    """Read and validate a configuration file or a ``manifest.json``."""
    with open(path) as handle:
        return parse_config(handle.read(), source=str(path))
