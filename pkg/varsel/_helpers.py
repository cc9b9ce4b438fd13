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

"""Shared private helpers."""

import numpy as np


def _mix_seed(*keys):
    """Derive a reproducible 63-bit seed from a tuple of integer keys.

    The mix is counter based: any ``(base_seed, cell, replicate, ...)``
    tuple maps to the same seed no matter when or where it is computed.

    :type keys: int
    :param keys: non-negative integers, e.g. base seed, cell index,
                 replicate index.

    :rtype: int
    :returns: a seed suitable for :func:`numpy.random.default_rng`.
    """
    for key in keys:
        if int(key) != key or key < 0:
            raise ValueError("Pass non-negative integer seed keys")
    sequence = np.random.SeedSequence([int(key) for key in keys])
    return int(sequence.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))


def _make_rng(seed):
    """Coerce ``seed`` (int, None, or a Generator) to a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _bools_to_mask(bools):
    """Pack a boolean vector into an int; element ``j`` is bit ``j``."""
    mask = 0
    for j, bit in enumerate(bools):
        if bit:
            mask |= 1 << j
    return mask


def _mask_to_bools(mask, width):
    """Unpack an int bit mask into a boolean vector of length ``width``."""
    return np.array([(mask >> j) & 1 for j in range(width)], dtype=bool)


def _soft_threshold(value, threshold):
    """Soft-thresholding operator ``sign(v) * max(|v| - t, 0)``."""
    return np.sign(value) * np.maximum(np.abs(value) - threshold, 0.0)
