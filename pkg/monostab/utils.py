# -*- coding: utf-8 -*-
#
# This file is part of monostab.
# Copyright (C) 2026 The monostab contributors.
#
# monostab is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# monostab is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with monostab. If not, see <http://www.gnu.org/licenses/>.

from __future__ import absolute_import, division, print_function

import numpy as np


def spawn_generators(seed, count):
    """Return ``count`` independent generators derived from one seed.

    Trial ``k`` always gets the ``k``-th child of the seed sequence, so the
    stream of a trial does not depend on how many trials run or in which
    order.

    Args:
        seed (int): the master seed; ``None`` draws fresh entropy.
        count (int): number of generators.

    Returns:
        list(numpy.random.Generator): one generator per trial.

    """
    children = np.random.SeedSequence(seed).spawn(int(count))
    return [np.random.default_rng(child) for child in children]


def make_generator(seed):
    return np.random.default_rng(np.random.SeedSequence(seed))


def log_uniform(rng, low, high, size=None):
    """Sample log-uniformly from ``[low, high]``."""
    return np.exp(rng.uniform(np.log(low), np.log(high), size=size))


def max_norm(x, axis=0):
    return np.max(np.abs(np.asarray(x, dtype=float)), axis=axis)


def ordered_pair(rng, upper):
    """A random pair ``lower <= upper_point`` inside the box ``[0, upper]``."""
    upper = np.asarray(upper, dtype=float)
    high = rng.uniform(0.0, 1.0, size=upper.shape) * upper
    low = rng.uniform(0.0, 1.0, size=upper.shape) * high
    return low, high


def first_violation(mask):
    """Index tuple of the first ``True`` entry of ``mask``, or ``None``."""
    hits = np.argwhere(mask)
    if not hits.size:
        return None
    return tuple(int(index) for index in hits[0])
