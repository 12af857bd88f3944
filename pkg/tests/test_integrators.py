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

from monostab.core import compile_file
from monostab.errors import HistoryGap, IntegrationError, PreconditionViolation
from monostab.expr import compile_system
from monostab.integrators import (
    IntegratorConfig,
    hermite,
    integrate_dde,
    integrate_ode,
)
from monostab.model import (
    DelayField,
    DelayLaw,
    InitialHistory,
    VectorField,
    build_vector_field,
)
from monostab.monotone import order_violation


def test_integrator_config_replace_ignores_none():
    cfg = IntegratorConfig(t_end=10.0)

    result = cfg.replace(t_end=None, rtol=1e-6)

    assert result.t_end == 10.0
    assert result.rtol == 1e-6


@pytest.mark.parametrize(
    "settings",
    [{"t_end": 0.0}, {"rtol": -1.0}, {"convergence_tol": 0.0}, {"max_step": 0.0}],
)
def test_integrator_config_rejects_bad_values(settings):
    with pytest.raises(ValueError) as excinfo:
        IntegratorConfig(**settings)

    assert "Malformed integrator configuration" in str(excinfo.value)


def test_integrator_config_from_mapping_rejects_unknown_keys():
    with pytest.raises(KeyError):
        IntegratorConfig.from_mapping({"t_end": 1.0, "tolerance": 1e-3})


def test_hermite_reproduces_cubic():
    def cubic(t):
        return t ** 3 - 2 * t

    def slope(t):
        return 3 * t ** 2 - 2

    result = hermite(1.0, 3.0, cubic(1.0), cubic(3.0), slope(1.0), slope(3.0), 2.2)

    assert result == pytest.approx(cubic(2.2))


def test_integrate_ode_exponential_decay():
    field = VectorField.linear([[-1.0]])
    cfg = IntegratorConfig(t_end=20.0)

    trajectory = integrate_ode(field, [1.0], cfg)

    assert trajectory.converged
    assert np.log(1e6) - 1e-3 < trajectory.t_converge < np.log(1e6) + 1.5
    assert trajectory(1.0)[0] == pytest.approx(np.exp(-1.0), rel=1e-4)
    assert trajectory(2.5)[0] == pytest.approx(np.exp(-2.5), rel=1e-4)


def test_trajectory_dense_output_shapes():
    field = VectorField.linear([[-1.0, 0.0], [0.0, -2.0]])
    trajectory = integrate_ode(field, [1.0, 1.0], IntegratorConfig(t_end=5.0))

    assert trajectory.states.shape == (len(trajectory.times), 2)
    assert trajectory(0.5).shape == (2,)
    assert trajectory(np.array([0.5, 1.0, 1.5])).shape == (2, 3)
    np.testing.assert_allclose(
        trajectory(np.array([0.5, 1.0])), [np.exp([-0.5, -1.0]), np.exp([-1.0, -2.0])], rtol=1e-4
    )


def test_trajectory_hits_nodes_exactly():
    field = VectorField.linear([[-1.0]])
    trajectory = integrate_ode(field, [1.0], IntegratorConfig(t_end=2.0))

    t = trajectory.times[3]

    assert trajectory(t)[0] == trajectory.states[3, 0]


def test_integrate_ode_stalls_at_another_equilibrium():
    field = build_vector_field(compile_system(["-x1*(x1-1)"]))

    trajectory = integrate_ode(field, [2.0], IntegratorConfig(t_end=200.0))

    assert trajectory.stalled
    assert not trajectory.converged
    assert trajectory.terminal[0] == pytest.approx(1.0, abs=1e-6)


def test_integrate_ode_reaches_horizon():
    field = VectorField.linear([[-0.01]])

    trajectory = integrate_ode(field, [1.0], IntegratorConfig(t_end=5.0, stall_window=None))

    assert trajectory.status == "horizon"
    assert trajectory.t_final == 5.0


def test_integrate_ode_rejects_negative_start():
    with pytest.raises(PreconditionViolation):
        integrate_ode(VectorField.linear([[-1.0]]), [-1.0])


def test_integrate_ode_blow_up():
    field = build_vector_field(compile_system(["x1^2"]))

    with pytest.raises(IntegrationError):
        integrate_ode(field, [1.0], IntegratorConfig(t_end=5.0))


def test_integrate_ode_clamps_tiny_negatives():
    field = VectorField.linear([[-1.0]])

    trajectory = integrate_ode(field, [-1e-12], IntegratorConfig(t_end=2.0))

    assert trajectory.states.min() >= 0.0


def test_integrate_dde_method_of_steps():
    # x' = -x(t - 1) with x = 1 on [-1, 0]: x = 1 - t on [0, 1].
    field = DelayField.from_system(
        compile_system(["-y1"], role="delayed"), law=DelayLaw.constant(1.0)
    )
    history = InitialHistory.constant([1.0])
    cfg = IntegratorConfig(t_end=1.5, stall_window=None)

    trajectory = integrate_dde(field, history, cfg)

    assert trajectory(0.5)[0] == pytest.approx(0.5, abs=1e-6)
    assert trajectory(1.0)[0] == pytest.approx(0.0, abs=1e-6)
    assert trajectory(1.5)[0] == pytest.approx(-0.375, abs=1e-5)


def test_integrate_dde_zero_delay_matches_ode():
    A = np.array([[-2.0, 1.0], [1.0, -2.0]])
    B = np.array([[0.0, 0.5], [0.5, 0.0]])
    cfg = IntegratorConfig(t_end=3.0, stall_window=None)
    ode = integrate_ode(VectorField.linear(A + B), [1.0, 0.5], cfg)
    field = DelayField.linear(A, B, law=DelayLaw.constant(0.0))

    dde = integrate_dde(field, InitialHistory.constant([1.0, 0.5]), cfg)

    assert dde.t_final == ode.t_final
    np.testing.assert_allclose(dde.terminal, ode.terminal, rtol=0, atol=1e-7)
    assert np.max(np.abs(dde(ode.times) - ode(ode.times))) < 1e-7


def test_integrate_dde_vanishing_lag_reaches_the_horizon():
    # 1 + sin(t) touches zero at t = 3*pi/2.
    field = DelayField.linear(
        -3.0 * np.eye(2), [[0.0, 1.0], [1.0, 0.0]], law=DelayLaw.sinusoidal(1.0, 1.0)
    )
    cfg = IntegratorConfig(t_end=10.0, stall_window=None)

    trajectory = integrate_dde(field, InitialHistory.constant([1.0, 1.0]), cfg)

    assert trajectory.status == "horizon"
    assert trajectory.t_final == 10.0
    assert len(trajectory.times) < 10000
    assert trajectory.terminal_norm < 0.1


def test_integrate_dde_preserves_the_order_of_histories(fixture_path):
    example = compile_file(fixture_path("quadratic_delay.yml"))
    cfg = IntegratorConfig(t_end=20.0, stall_window=None)

    lower = integrate_dde(example.delay_field, InitialHistory.constant([3.0, 1.5]), cfg)
    upper = integrate_dde(example.delay_field, InitialHistory.constant([4.0, 2.0]), cfg)

    assert order_violation(lower, upper, tol=1e-6) is None


def test_integrate_ode_halving_tolerances_moves_the_end_state_little():
    field = build_vector_field(compile_system(["-x1 + 0.5*x2^2", "-2*x2 + 0.5*x1"]))
    cfg = IntegratorConfig(t_end=5.0, stall_window=None)
    finer = cfg.replace(rtol=cfg.rtol / 2, atol=cfg.atol / 2)

    coarse = integrate_ode(field, [1.0, 1.0], cfg)
    fine = integrate_ode(field, [1.0, 1.0], finer)

    assert coarse.t_final == fine.t_final == 5.0
    assert np.max(np.abs(coarse.terminal - fine.terminal)) < 10 * cfg.rtol


def test_integrate_dde_proportional_delay_converges():
    A = -3.0 * np.eye(2)
    B = np.array([[0.0, 1.0], [1.0, 0.0]])
    field = DelayField.linear(A, B, law=DelayLaw.proportional(0.5))
    cfg = IntegratorConfig(t_end=400.0, convergence_tol=1e-3, convergence_window=10.0)

    trajectory = integrate_dde(field, InitialHistory.constant([1.0, 1.0]), cfg)

    assert trajectory.converged
    assert trajectory.terminal_norm < 1e-3


def test_integrate_dde_heterogeneous():
    field = DelayField.linear(-3.0 * np.eye(2), [[0.0, 1.0], [1.0, 0.0]])
    laws = [
        [DelayLaw.constant(0.0), DelayLaw.proportional(0.3)],
        [DelayLaw.constant(2.0), DelayLaw.constant(0.0)],
    ]
    cfg = IntegratorConfig(t_end=200.0, convergence_tol=1e-3, convergence_window=10.0)

    trajectory = integrate_dde(field.with_laws(laws), InitialHistory.constant([1.0, 1.0]), cfg)

    assert trajectory.converged


def test_integrate_dde_history_gap():
    field = DelayField.linear([[-1.0]], [[0.5]], law=DelayLaw.constant(2.0))
    history = InitialHistory.piecewise_linear([-1.0, 0.0], [[1.0], [1.0]])

    with pytest.raises(HistoryGap):
        integrate_dde(field, history)


def test_trajectory_write_csv():
    trajectory = integrate_ode(VectorField.linear([[-1.0, 0.0], [0.0, -1.0]]), [1.0, 2.0])
    stream = io.StringIO()

    trajectory.write_csv(stream)
    lines = stream.getvalue().splitlines()

    assert lines[0] == "t,x1,x2"
    assert lines[1] == "0,1,2"
    assert len(lines) == len(trajectory.times) + 1
