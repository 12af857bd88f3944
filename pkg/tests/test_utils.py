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

from monostab.utils import (
    first_violation,
    log_uniform,
    make_generator,
    max_norm,
    ordered_pair,
    spawn_generators,
)


def test_spawn_generators_are_reproducible():
    first = [rng.uniform() for rng in spawn_generators(7, 3)]
    second = [rng.uniform() for rng in spawn_generators(7, 3)]

    assert first == second
    assert len(set(first)) == 3


def test_spawn_generators_do_not_depend_on_the_count():
    few = [rng.uniform() for rng in spawn_generators(7, 2)]
    many = [rng.uniform() for rng in spawn_generators(7, 5)]

    assert few == many[:2]


def test_make_generator():
    assert make_generator(1).uniform() == make_generator(1).uniform()


def test_log_uniform_stays_in_range():
    result = log_uniform(make_generator(0), 1e-3, 1e3, size=1000)

    assert np.all(result >= 1e-3)
    assert np.all(result <= 1e3)
    assert np.any(result < 1.0)
    assert np.any(result > 1.0)


def test_max_norm():
    expected = [2.0, 3.0]
    result = max_norm(np.array([[1.0, -3.0], [-2.0, 0.5]]))

    np.testing.assert_array_equal(expected, result)


def test_ordered_pair():
    upper = np.array([4.0, 2.0])
    rng = make_generator(0)

    for _ in range(100):
        low, high = ordered_pair(rng, upper)

        assert np.all(low >= 0)
        assert np.all(low <= high)
        assert np.all(high <= upper)


def test_first_violation():
    mask = np.array([[False, False], [False, True], [True, True]])

    assert first_violation(mask) == (1, 1)
    assert first_violation(np.zeros((2, 2), dtype=bool)) is None
