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

"""Command-line entry point: ``varsel run|render|validate|select|simulate``."""

import argparse
import logging
import sys

from varsel import bench
from varsel import render
from varsel.config import load_config
from varsel.dataset import Dataset
from varsel.exceptions import ConfigInvalid
from varsel.exceptions import VarselError
from varsel.family import Family
from varsel.methods import METHOD_NAMES
from varsel.methods import MethodSpec
from varsel.selector import Selector
from varsel.simgen import simulate
from varsel.version import __version__


_LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_INTERRUPTED = 130


def _overrides(config, args):
    if args.seed is not None:
        config = config.replace(seed=args.seed)
    if args.workers is not None:
        config = config.replace(workers=args.workers)
    if args.output is not None:
        config = config.replace(output=args.output)
    return config


def _cmd_run(args):
    config = _overrides(load_config(args.config), args)
    directory = bench.run_benchmark(config, resume=args.resume)
    print(directory)
    return EXIT_OK


def _cmd_render(args):
    for path in render.render_figures(args.directory, metrics=tuple(args.metric)):
        print(path)
    return EXIT_OK


def _cmd_validate(args):
    config = load_config(args.config)
    cells = config.cells()
    print(
        "%s: OK (%d cells x %d replicates x %d methods)"
        % (args.config, len(cells), config.replicates, len(config.methods))
    )
    return EXIT_OK


def _cmd_select(args):
    data = Dataset.from_csv(args.data, family=args.family, response=args.response)
    selector = Selector(data, n_folds=args.n_folds, seed=args.seed)
    selection = selector.run(MethodSpec.from_name(args.method))
    names = data.metadata.get("columns")
    chosen = [names[column] for column in selection.spec.columns] if names else []
    print("method: %s" % (selection.method,))
    print("selected: %s" % (", ".join(chosen) or "(null model)",))
    print("bits: %s" % (selection.spec.bits,))
    print("score: %.6f" % (selection.score,))
    print("models evaluated: %d" % (selection.n_models_evaluated,))
    return EXIT_OK


def _cmd_simulate(args):
    config = load_config(args.config)
    cells = config.cells()
    if not 0 <= args.cell < len(cells):
        raise ValueError("Pass --cell in [0, %d)" % (len(cells),))
    if not 0 <= args.replicate < config.replicates:
        raise ValueError("Pass --replicate in [0, %d)" % (config.replicates,))
    data = simulate(config.setting(cells[args.cell], args.replicate))
    data.to_csv(args.out)
    print(args.out)
    return EXIT_OK


def build_parser():
    """Argument parser for every subcommand."""
    parser = argparse.ArgumentParser(
        prog="varsel",
        description="Variable selection by information criteria, GA and LASSO, "
        "with a Monte-Carlo benchmark harness.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logs")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    commands = parser.add_subparsers(dest="command")
    commands.required = True

    run = commands.add_parser("run", help="run a benchmark configuration")
    run.add_argument("config", help="YAML configuration or manifest.json")
    run.add_argument("--workers", type=int, default=None, help="worker processes")
    run.add_argument("--seed", type=int, default=None, help="base seed override")
    run.add_argument("--output", default=None, help="results directory override")
    run.add_argument(
        "--resume", action="store_true", help="continue an interrupted run"
    )
    run.set_defaults(handler=_cmd_run)

    figures = commands.add_parser("render", help="render figures from summary.csv")
    figures.add_argument("directory", help="results directory")
    figures.add_argument(
        "--metric",
        action="append",
        choices=render.METRICS,
        default=None,
        help="metric to draw (repeatable; default all)",
    )
    figures.set_defaults(handler=_cmd_render)

    validate = commands.add_parser("validate", help="check a configuration")
    validate.add_argument("config")
    validate.set_defaults(handler=_cmd_validate)

    select = commands.add_parser("select", help="run one method on a CSV dataset")
    select.add_argument("data", help="CSV with a response column and regressors")
    select.add_argument(
        "--family", default="gaussian", choices=[member.value for member in Family]
    )
    select.add_argument("--method", default="BIC", help=", ".join(METHOD_NAMES))
    select.add_argument("--response", default="y", help="response column name")
    select.add_argument("--n-folds", type=int, default=10, dest="n_folds")
    select.add_argument("--seed", type=int, default=0)
    select.set_defaults(handler=_cmd_select)

    dump = commands.add_parser("simulate", help="dump one benchmark dataset as CSV")
    dump.add_argument("config")
    dump.add_argument("--cell", type=int, required=True)
    dump.add_argument("--replicate", type=int, required=True)
    dump.add_argument("--out", required=True)
    dump.set_defaults(handler=_cmd_simulate)
    return parser


def main(argv=None):
    """Run the command line; returns the process exit code."""
    args = build_parser().parse_args(argv)
    if getattr(args, "metric", None) is None and args.command == "render":
        args.metric = list(render.METRICS)
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(
        level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )
    try:
        return args.handler(args)
    except ConfigInvalid as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CONFIG
    except KeyboardInterrupt:
        print("interrupted; rerun with --resume", file=sys.stderr)
        return EXIT_INTERRUPTED
    except (VarselError, ValueError, KeyError, OSError) as exc:
        _LOGGER.error("%s", exc)
        return EXIT_FAILURE


if __name__ == "__main__":  # pragma: NO COVER
    sys.exit(main())
