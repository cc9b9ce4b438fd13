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

"""Datasets and candidate models.

A :class:`Dataset` is the ``(y, X)`` pair of a regression problem with a
response family attached. A :class:`ModelSpec` is one point of the ``2**p``
model space: the subset of the ``p`` candidate regressors that enter the
linear predictor. The intercept is always fitted and is never part of a
:class:`ModelSpec`.
"""

import dataclasses
import types

import numpy as np
import pandas as pd

from varsel._helpers import _bools_to_mask
from varsel._helpers import _mask_to_bools
from varsel.family import Family


@dataclasses.dataclass(frozen=True)
class ModelSpec(object):
    """Bit set over the ``p`` candidate regressors.

    Bit ``j`` (0-based) marks regressor ``x{j+1}``.

    :type width: int
    :param width: number of candidate regressors ``p``.

    :type mask: int
    :param mask: packed bit set.
    """

    width: int
    mask: int = 0

    def __post_init__(self):
        if not isinstance(self.width, int) or self.width < 0:
            raise ValueError("Pass a non-negative integer width")
        if not isinstance(self.mask, int) or self.mask < 0:
            raise ValueError("Pass a non-negative integer mask")
        if self.mask >> self.width:
            raise ValueError(
                "Mask %d has bits beyond width %d" % (self.mask, self.width)
            )

    @classmethod
    def null(cls, width):
        """Intercept-only model."""
        return cls(width, 0)

    @classmethod
    def full(cls, width):
        """Model with every candidate regressor."""
        return cls(width, (1 << width) - 1)

    @classmethod
    def from_indices(cls, width, indices):
        """Factory: construct a spec from 1-based regressor indices.

        :type width: int
        :param width: number of candidate regressors.

        :type indices: iterable of int
        :param indices: 1-based indices, e.g. ``(1, 2, 3)`` for x1..x3.

        :rtype: :class:`ModelSpec`
        :returns: the spec selecting exactly ``indices``.
        """
        mask = 0
        for index in indices:
            if not 1 <= index <= width:
                raise ValueError("Index %r outside 1..%d" % (index, width))
            mask |= 1 << (index - 1)
        return cls(width, mask)

    @classmethod
    def from_bools(cls, bools):
        """Factory: construct a spec from a boolean vector (x1 first)."""
        bools = np.asarray(bools, dtype=bool)
        return cls(int(bools.size), _bools_to_mask(bools))

    @classmethod
    def from_bits(cls, bits):
        """Factory: parse the ``"101000"`` serialization (x1 first).

        :raises: ``ValueError`` if ``bits`` has characters other than 0/1.
        """
        bits = str(bits).strip()
        if any(char not in "01" for char in bits):
            raise ValueError("Pass a string of 0/1 characters, got %r" % (bits,))
        return cls.from_bools([char == "1" for char in bits])

    @property
    def bits(self):
        """Serialized form, one character per regressor, x1 first."""
        return "".join("1" if (self.mask >> j) & 1 else "0" for j in range(self.width))

    @property
    def columns(self):
        """0-based column indices of the included regressors."""
        return tuple(j for j in range(self.width) if (self.mask >> j) & 1)

    @property
    def indices(self):
        """1-based indices of the included regressors."""
        return tuple(j + 1 for j in self.columns)

    @property
    def size(self):
        return bin(self.mask).count("1")

    @property
    def is_null(self):
        return self.mask == 0

    def as_bools(self):
        return _mask_to_bools(self.mask, self.width)

    def toggle(self, column):
        """Return the spec with 0-based ``column`` added or dropped."""
        if not 0 <= column < self.width:
            raise ValueError("Column %r outside 0..%d" % (column, self.width - 1))
        return ModelSpec(self.width, self.mask ^ (1 << column))

    def sort_key(self):
        """Parsimony order: smaller size first, then the smaller bit string."""
        return (self.size, self.bits)

    def names(self):
        return tuple("x%d" % (index,) for index in self.indices)

    def __contains__(self, column):
        return 0 <= column < self.width and bool((self.mask >> column) & 1)

    def __str__(self):
        return "{%s}" % (", ".join(self.names()),)


class Dataset(object):
    """Response vector and regressor matrix with a response family.

    Arrays are copied and marked read-only, so instances are safe to share
    between concurrent workers.

    :type y: array-like
    :param y: response vector of length ``n``.

    :type X: array-like
    :param X: ``n x p`` regressor matrix (``p`` may be 0).

    :type family: :class:`~varsel.family.Family` or str
    :param family: response family.

    :type metadata: dict
    :param metadata: (Optional) free-form provenance, e.g. generator
                     settings.
    """

    def __init__(self, y, X, family=Family.GAUSSIAN, metadata=None):
        family = Family.from_name(family)
        y = np.array(y, dtype=float).reshape(-1)
        X = np.array(X, dtype=float)
        if X.ndim == 1 and X.size == 0:
            X = X.reshape(y.size, 0)
        if X.ndim != 2:
            raise ValueError("Pass a 2-D regressor matrix")
        if y.size < 1:
            raise ValueError("Pass at least one observation")
        if X.shape[0] != y.size:
            raise ValueError(
                "Response has %d rows but X has %d" % (y.size, X.shape[0])
            )
        if not np.all(np.isfinite(X)):
            raise ValueError("Pass a finite regressor matrix")
        family.validate_response(y)
        y.flags.writeable = False
        X.flags.writeable = False
        self._y = y
        self._X = X
        self._family = family
        self._metadata = types.MappingProxyType(dict(metadata or {}))

    @property
    def y(self):
        return self._y

    @property
    def X(self):
        return self._X

    @property
    def family(self):
        return self._family

    @property
    def metadata(self):
        """Read-only provenance mapping."""
        return self._metadata

    @property
    def n(self):
        return self._y.size

    @property
    def p(self):
        return self._X.shape[1]

    def null_spec(self):
        return ModelSpec.null(self.p)

    def full_spec(self):
        return ModelSpec.full(self.p)

    def check_spec(self, spec):
        """Raise ``ValueError`` unless ``spec`` was built for this dataset."""
        if not isinstance(spec, ModelSpec):
            raise ValueError("Pass a ModelSpec")
        if spec.width != self.p:
            raise ValueError(
                "Spec width %d does not match p=%d" % (spec.width, self.p)
            )

    def design(self, spec):
        """Design matrix ``[1 | X_spec]`` for ``spec``.

        :rtype: :class:`numpy.ndarray`
        :returns: ``n x (1 + |spec|)`` matrix.
        """
        self.check_spec(spec)
        return np.column_stack([np.ones(self.n), self._X[:, list(spec.columns)]])

    def subset(self, rows):
        """Dataset restricted to ``rows`` (indices or boolean mask)."""
        rows = np.asarray(rows)
        return Dataset(
            self._y[rows], self._X[rows], family=self._family, metadata=self._metadata
        )

    def to_frame(self):
        """:class:`pandas.DataFrame` with ``y`` first and ``x1..xp``."""
        frame = pd.DataFrame(
            self._X, columns=["x%d" % (j + 1,) for j in range(self.p)]
        )
        frame.insert(0, "y", self._y)
        return frame

    def to_csv(self, path):
        """Dump as CSV (header row; ``y`` first; ``x1..xp`` following)."""
        self.to_frame().to_csv(path, index=False, float_format="%.17g")

    @classmethod
    def from_frame(cls, frame, family=Family.GAUSSIAN, response="y"):
        """Factory: construct a dataset from a data frame.

        :type frame: :class:`pandas.DataFrame`
        :param frame: the response column plus numeric regressor columns.

        :type response: str
        :param response: name of the response column.

        :rtype: :class:`Dataset`
        :returns: dataset whose ``X`` holds every non-response column in
                  frame order.

        :raises: ``KeyError`` if the response column is missing.
        """
        if response not in frame.columns:
            raise KeyError("Frame lacks response column %r" % (response,))
        regressors = frame.drop(columns=[response])
        return cls(
            frame[response].to_numpy(dtype=float),
            regressors.to_numpy(dtype=float).reshape(len(frame), regressors.shape[1]),
            family=family,
            metadata={"columns": tuple(str(name) for name in regressors.columns)},
        )

    @classmethod
    def from_csv(cls, path, family=Family.GAUSSIAN, response="y"):
        """Factory: load the CSV layout written by :meth:`to_csv`."""
        return cls.from_frame(pd.read_csv(path), family=family, response=response)
