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

import mock
import numpy as np
import pytest
from flask import current_app

from monostab import api
from monostab.certificates import CERTIFIED, INCONCLUSIVE, CertificateResult
from monostab.core import compile_file
from monostab.errors import ConfigError, NoConvergence


@pytest.fixture
def describe(fixture_path):
    def _describe(name):
        return compile_file(fixture_path(name))

    return _describe


def test_setting_falls_back_to_the_app_config():
    assert api._setting("GRID", None) == 32
    assert api._setting("GRID", 8) == 8


def test_setting_reads_overridden_config():
    with mock.patch.dict(current_app.config, {"MONOSTAB_SEED": 42}):
        assert api._setting("SEED", None) == 42


def test_get_method_resolves_names():
    assert api._get_method("path") is api.certify_with_path
    assert api._get_method("non-monotone") is api.certify_with_comparison


def test_get_method_falls_back_to_the_default_method():
    assert api._get_method("does-not-exist") is api.certify_with_w


def test_get_method_falls_back_when_the_import_fails():
    methods = {"broken": "monostab.api:does_not_exist"}

    with mock.patch.dict(current_app.config, {"MONOSTAB_CERTIFY_METHODS": methods}):
        assert api._get_method("broken") is api.certify_with_w


def test_get_method_accepts_callables():
    method = mock.Mock()

    assert api._get_method(method) is method


@pytest.mark.parametrize(
    "name,expected",
    [
        ("quadratic.yml", "path"),
        ("nonmonotone.yml", "non-monotone"),
        ("metzler.yml", "linear"),
        ("linear.yml", "w"),
        ("logistic.yml", "w"),
    ],
)
def test_default_method(describe, name, expected):
    assert api._default_method(describe(name)) == expected


def test_certify_uses_the_given_callable(describe):
    description = describe("metzler.yml")
    expected = CertificateResult("dummy", CERTIFIED)
    method = mock.Mock(return_value=expected)

    result = api.certify(description, method=method, grid=4)

    assert result is expected
    method.assert_called_once_with(description, grid=4, margin=None, seed=None, cfg=None)


def test_certify_picks_the_linear_method(describe):
    result = api.certify(describe("metzler.yml"))

    assert result.name == "linear"
    assert result.certified


def test_certify_with_path(describe):
    result = api.certify(describe("quadratic.yml"), grid=16)

    assert result.name == "path"
    assert result.certified
    np.testing.assert_allclose(result.box.upper, [4.0, 2.0])
    assert "decrease" in result.metadata


def test_certify_with_lyapunov_without_convergence(describe):
    result = api.certify(describe("logistic.yml"), method="lyapunov")

    assert result.status == INCONCLUSIVE
    np.testing.assert_allclose(result.w, [2.0])


def test_certify_with_path_needs_a_path(describe):
    with pytest.raises(ConfigError) as excinfo:
        api.certify(describe("metzler.yml"), method="path")

    assert "the path method needs a path" in str(excinfo.value)


def test_integrator_config_merges_the_description(describe):
    cfg = api.integrator_config(describe("quadratic.yml"), rtol=1e-6)

    assert cfg.t_end == 200.0
    assert cfg.convergence_tol == 0.005
    assert cfg.stall_window is None
    assert cfg.rtol == 1e-6
    assert cfg.atol == current_app.config["MONOSTAB_INTEGRATOR"]["atol"]


def test_integrator_config_rejects_a_non_positive_horizon(describe):
    with pytest.raises(ConfigError) as excinfo:
        api.integrator_config(describe("quadratic.yml"), t_end=0.0)

    assert "t_end must be positive" in str(excinfo.value)


def test_parse_laws():
    laws = api.parse_laws(["zero", "prop:0.5"])

    assert [law.label for law in laws] == ["const:0.0", "prop:0.5"]


def test_parse_laws_rejects_malformed_laws():
    with pytest.raises(ConfigError) as excinfo:
        api.parse_laws(["sin:1,x"])

    assert "Malformed delay law" in str(excinfo.value)


def test_simulate_starts_from_the_box_corner(describe):
    trajectory = api.simulate(describe("logistic.yml"))

    np.testing.assert_allclose(trajectory.states[0], [2.0])
    assert trajectory.stalled
    assert trajectory.terminal[0] == pytest.approx(1.0, abs=1e-4)


def test_simulate_rejects_a_delay_for_an_ode(describe):
    law = api.parse_laws(["const:1"])[0]

    with pytest.raises(ConfigError) as excinfo:
        api.simulate(describe("logistic.yml"), law=law)

    assert "a delay law needs a delayed field" in str(excinfo.value)


def test_sweep(describe):
    report = api.sweep(describe("quadratic_delay.yml"))

    assert report.passed
    assert [row[0] for row in report.rows] == [
        "const:0.0",
        "const:2.0",
        "sin:1.0,0.5,1.0",
        "prop:0.5",
    ]


def test_sweep_needs_a_delayed_field(describe):
    with pytest.raises(ConfigError):
        api.sweep(describe("quadratic.yml"))


def test_construct_without_convergence(describe):
    with pytest.raises(NoConvergence):
        api.construct(describe("logistic.yml"))


def test_linear_with_a_delay(describe):
    reports = api.linear(describe("linear.yml"))

    assert [report.name for report in reports] == ["linear", "linear-delay"]
    assert all(report.passed for report in reports)


def test_linear_without_a_delay(describe):
    reports = api.linear(describe("metzler.yml"))

    assert len(reports) == 1
    assert reports[0].certified


def test_linear_needs_a_matrix(describe):
    with pytest.raises(ConfigError):
        api.linear(describe("quadratic.yml"))


def test_check_psi(describe):
    report = api.check_psi(describe("quadratic.yml"), trials=3, grid=16)

    assert report.passed
    assert report.metadata["kamke"] == "PASS"


def test_check_psi_needs_psi(describe):
    with pytest.raises(ConfigError):
        api.check_psi(describe("quadratic_delay.yml"))
