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

import io

import numpy as np
import pytest

from monostab.api import integrator_config
from monostab.core import compile_file
from monostab.errors import NoConvergence, NotInOmega
from monostab.expr import compile_system
from monostab.lyapunov import (
    MaxSepLyap,
    construct_from_trajectory,
    dini_derivative,
    dini_derivatives,
    sandwich_bounds,
    verify_decrease,
)
from monostab.model import BoxSet, VectorField, build_vector_field
from monostab.reports import FAIL, PASS
from monostab.utils import spawn_generators

EXAMPLE_F = ["-5*x1 + x1*x2^2", "x1 - 2*x2^2"]


@pytest.fixture
def example_field():
    return build_vector_field(compile_system(EXAMPLE_F))


@pytest.fixture
def example_lyap():
    return MaxSepLyap.from_expressions(["s", "s^2"], BoxSet([4.0, 2.0]))


def test_max_sep_lyap_values(example_lyap):
    assert example_lyap(np.array([1.0, 0.5])) == 1.0
    assert example_lyap(np.array([1.0, 2.0])) == pytest.approx(4.0)
    np.testing.assert_allclose(example_lyap(np.array([[1.0, 0.0], [0.5, 3.0]])), [1.0, 9.0])


def test_max_sep_lyap_inverse(example_lyap):
    np.testing.assert_allclose(example_lyap.inverse(4.0), [4.0, 2.0], rtol=1e-9)
    np.testing.assert_allclose(example_lyap.level_box(1.0).upper, [1.0, 1.0], rtol=1e-9)


def test_max_sep_lyap_from_path_matches_closed_form(fixture_path):
    description = compile_file(fixture_path("quadratic.yml"))
    lyap = MaxSepLyap.from_path(description.path)

    assert lyap(np.array([3.0, 1.5])) == pytest.approx(3.0)
    assert lyap(np.array([1.0, 1.5])) == pytest.approx(2.25)
    np.testing.assert_allclose(lyap.box.upper, [4.0, 2.0])


def test_dini_derivative_at_a_tie(example_lyap, example_field):
    result = dini_derivative(example_lyap, example_field, np.array([1.0, 1.0]))

    assert result == pytest.approx(-2.0, rel=1e-6)


def test_dini_derivative_single_active_index(example_lyap, example_field):
    result = dini_derivative(example_lyap, example_field, np.array([4.0, 1.0]))

    assert result == pytest.approx(-16.0, rel=1e-6)


def test_dini_derivative_at_origin(example_lyap, example_field):
    assert dini_derivative(example_lyap, example_field, np.zeros(2)) == 0.0


def random_dini_instance(rng):
    n = int(rng.integers(2, 4))
    sources = [
        "%.6f*s^%d" % (rng.uniform(0.5, 2.0), rng.integers(1, 4)) for _ in range(n)
    ]
    lyap = MaxSepLyap.from_expressions(sources, BoxSet(np.full(n, 4.0)))
    field = VectorField.linear(rng.uniform(-1.0, 1.0, size=(n, n)) - np.eye(n))
    while True:
        x = rng.uniform(0.1, 2.0, size=n)
        values = np.sort(lyap.component_values(x))
        if values[-1] - values[-2] > 1e-2 * (1.0 + values[-1]):
            return lyap, field, x


def test_dini_derivative_matches_extrapolated_forward_differences():
    h = 1e-5
    for rng in spawn_generators(2026, 1000):
        lyap, field, x = random_dini_instance(rng)
        flow = field(x)

        def forward(step):
            return (lyap(x + step * flow) - lyap(x)) / step

        expected = 2.0 * forward(h / 2) - forward(h)
        result = dini_derivative(lyap, field, x)

        assert result == pytest.approx(expected, rel=1e-5, abs=1e-7)


def test_dini_derivatives_vectorised(example_lyap, example_field):
    points = np.array([[1.0, 4.0, 0.0], [1.0, 1.0, 0.0]])

    result = dini_derivatives(example_lyap, example_field, points)

    np.testing.assert_allclose(result, [-2.0, -16.0, 0.0], rtol=1e-6)


def test_verify_decrease_example(example_lyap, example_field):
    result = verify_decrease(example_lyap, example_field, BoxSet([4.0, 2.0]), grid=64)

    assert result.status == PASS
    assert result.witness["violations"] == 0
    assert result.metadata["points"] == 64 * 64 - 1
    assert np.all(result.mu > 0)


def test_verify_decrease_rejects_growing_field(example_lyap):
    field = build_vector_field(compile_system(["-x1", "x2"]))

    result = verify_decrease(example_lyap, field, BoxSet([4.0, 2.0]), grid=16)

    assert result.status == FAIL
    assert result.witness["violations"] > 0
    assert result.witness["dini"] > 0


def test_construct_from_trajectory_example(fixture_path, example_field):
    description = compile_file(fixture_path("quadratic.yml"))
    cfg = integrator_config(description)

    lyap = construct_from_trajectory(example_field, [4.0, 2.0], cfg=cfg)
    report = verify_decrease(lyap, example_field, lyap.box, grid=32)

    assert report.status == PASS
    assert report.metadata["min_ratio"] >= 0.99
    np.testing.assert_allclose(lyap.box.upper, [4.0, 2.0])
    assert any("extrapolated" in warning for warning in lyap.warnings)


def test_construct_from_trajectory_level_sets_follow_time(fixture_path, example_field):
    description = compile_file(fixture_path("quadratic.yml"))
    cfg = integrator_config(description)

    lyap = construct_from_trajectory(example_field, [4.0, 2.0], cfg=cfg)
    trajectory = lyap.trajectory
    times = trajectory.times[trajectory.times <= 1.0]

    for t in times:
        assert lyap(trajectory(t)) == pytest.approx(np.exp(-t), abs=1e-6)


def test_construct_from_trajectory_without_convergence():
    field = build_vector_field(compile_system(["-x1*(x1 - 1)"]))

    with pytest.raises(NoConvergence) as excinfo:
        construct_from_trajectory(field, [2.0])

    assert excinfo.value.terminal_state[0] == pytest.approx(1.0, abs=1e-3)


def test_construct_from_trajectory_outside_omega():
    field = build_vector_field(compile_system(["-x1*(x1 - 1)"]))

    with pytest.raises(NotInOmega):
        construct_from_trajectory(field, [0.5])


def test_write_csv():
    lyap = MaxSepLyap.linear([1.0, 2.0])
    stream = io.StringIO()

    lyap.write_csv(stream, points=3)
    lines = stream.getvalue().splitlines()

    assert lines[0] == "i,x_i,V_i,dV_i"
    assert lines[1] == "1,0,0,1"
    assert lines[-1] == "2,2,1,0.5"
    assert len(lines) == 7


def test_table_needs_a_box():
    lyap = MaxSepLyap(MaxSepLyap.linear([1.0]).components)

    with pytest.raises(ValueError):
        lyap.table()


def test_sandwich_bounds():
    lyap = MaxSepLyap.linear([1.0, 2.0])

    r, lower, upper = sandwich_bounds(lyap, points=5)

    np.testing.assert_allclose(r, [0.0, 0.25, 0.5, 0.75, 1.0])
    np.testing.assert_allclose(lower, r / 2)
    np.testing.assert_allclose(upper, r)
