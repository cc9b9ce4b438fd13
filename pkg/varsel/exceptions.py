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

"""Exceptions and warnings raised by :mod:`varsel`."""


class VarselError(Exception):
    """Base class for all errors raised by this package.

    :type message: str
    :param message: human readable description of the failure.

    :type context: dict
    :param context: (Optional) structured details about the failure, e.g.
                    the model spec or the iteration count at which it
                    happened.
    """

    def __init__(self, message, context=None):
        super(VarselError, self).__init__(message)
        self.message = message
        self.context = dict(context or {})

    def __str__(self):
        if not self.context:
            return self.message
        details = ", ".join(
            "%s=%s" % (key, value) for key, value in sorted(self.context.items())
        )
        return "%s (%s)" % (self.message, details)


class FitError(VarselError):
    """A single model could not be fit."""


class RankDeficient(FitError):
    """The design matrix has linearly dependent columns."""


class DegenerateFit(FitError):
    """The fit interpolates the response and the log-likelihood diverges."""


class NotConverged(FitError):
    """An iterative fit hit its iteration cap."""


class NonFiniteLoglik(VarselError):
    """A criterion was asked to score a non-finite log-likelihood."""


class SpaceTooLarge(VarselError):
    """Exhaustive enumeration was requested for too many regressors."""


class AllModelsDegenerate(VarselError):
    """No candidate model in a search could be fit."""


class FoldDegenerate(VarselError):
    """A cross-validation training fold cannot support a fit."""


class TruthEmpty(VarselError):
    """Recall is undefined because the true model has no regressors."""


class ConfigInvalid(VarselError):
    """A benchmark configuration failed validation.

    :type errors: list of tuple
    :param errors: ``(line, message)`` pairs; ``line`` is 1-based, or
                   ``None`` when the problem is not tied to a line.

    :type source: str
    :param source: (Optional) name of the offending file.
    """

    def __init__(self, errors, source=None):
        self.errors = list(errors)
        self.source = source
        super(ConfigInvalid, self).__init__(self._render())

    def _render(self):
        prefix = self.source or "<config>"
        lines = []
        for line, message in self.errors:
            if line is None:
                lines.append("%s: %s" % (prefix, message))
            else:
                lines.append("%s:%d: %s" % (prefix, line, message))
        return "\n".join(lines)


class SeparationWarning(RuntimeWarning):
    """The linear predictor of a Bernoulli/Poisson fit diverged."""


class MissingCellsWarning(UserWarning):
    """Grid points expected in a figure are absent from the summary."""
