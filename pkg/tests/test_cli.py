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

import mock
import numpy as np
import pytest
from click.testing import CliRunner

from monostab.cli import EXIT_ERROR, EXIT_FAIL, EXIT_PASS, cli


@pytest.fixture
def runner():
    return CliRunner()


def test_check_monotone_passes(runner, fixture_path):
    result = runner.invoke(cli, ["check-monotone", fixture_path("quadratic.yml"), "--grid", "16"])

    assert result.exit_code == EXIT_PASS
    assert "check: kamke\nstatus: PASS\n" in result.output


def test_check_monotone_fails_on_a_non_cooperative_field(runner, fixture_path):
    result = runner.invoke(cli, ["check-monotone", fixture_path("noncooperative.yml")])

    assert result.exit_code == EXIT_FAIL
    assert "status: FAIL" in result.output


def test_check_monotone_rejects_a_non_positive_horizon(runner, fixture_path):
    result = runner.invoke(cli, ["check-monotone", fixture_path("quadratic.yml"), "--tend", "0"])

    assert result.exit_code == EXIT_ERROR


def test_certify_prints_the_box(runner, fixture_path):
    result = runner.invoke(cli, ["certify", fixture_path("quadratic.yml"), "--grid", "16"])

    assert result.exit_code == EXIT_PASS
    assert "check: path\nstatus: CERTIFIED\nbox: 4 2\n" in result.output
    assert "check: psi-stability" in result.output


def test_certify_csv_output(runner, fixture_path):
    result = runner.invoke(
        cli, ["certify", fixture_path("metzler.yml"), "--format", "csv"]
    )

    assert result.exit_code == EXIT_PASS
    assert result.output.startswith("key,value\ncheck,linear\nstatus,CERTIFIED\n")


def test_certify_missing_file(runner, tmpdir):
    result = runner.invoke(cli, ["certify", str(tmpdir.join("missing.yml"))])

    assert result.exit_code == EXIT_ERROR
    assert "cannot read description" in result.output


def test_certify_malformed_description(runner, tmpdir):
    path = tmpdir.join("bad.yml")
    path.write('f: ["-x1"]\nfoo: 1\n')

    result = runner.invoke(cli, ["certify", str(path)])

    assert result.exit_code == EXIT_ERROR
    assert "bad.yml:2: unknown key 'foo'" in result.output


def test_simulate_exits_zero_without_convergence(runner, fixture_path):
    result = runner.invoke(cli, ["simulate", fixture_path("logistic.yml")])

    assert result.exit_code == EXIT_PASS
    assert "check: simulation\nstatus: stalled\n" in result.output


def test_simulate_writes_the_trajectory(runner, fixture_path, tmpdir):
    out = str(tmpdir.join("trajectory.csv"))

    result = runner.invoke(cli, ["simulate", fixture_path("logistic.yml"), "--out", out])

    assert result.exit_code == EXIT_PASS
    with io.open(out, encoding="utf-8") as stream:
        assert stream.readline().startswith("t,")


def test_simulate_rejects_a_malformed_law(runner, fixture_path):
    result = runner.invoke(cli, ["simulate", fixture_path("quadratic_delay.yml"), "--law", "sin:x"])

    assert result.exit_code == EXIT_ERROR
    assert "Malformed delay law" in result.output


def test_sweep_with_an_empty_laws_file(runner, fixture_path, tmpdir):
    laws = tmpdir.join("laws.txt")
    laws.write("# no laws\n\n")

    result = runner.invoke(cli, ["sweep", fixture_path("quadratic_delay.yml"), "--laws", str(laws)])

    assert result.exit_code == EXIT_PASS


def test_linear(runner, fixture_path):
    result = runner.invoke(cli, ["linear", fixture_path("metzler.yml")])

    assert result.exit_code == EXIT_PASS
    assert "check: linear\nstatus: CERTIFIED\n" in result.output


def test_check_monotone_is_reproducible_with_a_seed(runner, fixture_path):
    args = ["check-monotone", fixture_path("quadratic.yml"), "--grid", "8", "--seed", "5"]

    first = runner.invoke(cli, args)
    second = runner.invoke(cli, args)

    assert first.exit_code == EXIT_PASS
    assert first.output == second.output


def test_certify_by_w_is_inconclusive_at_a_second_equilibrium(runner, fixture_path):
    result = runner.invoke(cli, ["certify", fixture_path("logistic.yml"), "--method", "w"])

    assert result.exit_code == EXIT_FAIL
    assert "status: INCONCLUSIVE" in result.output


def test_simulate_rejects_a_law_violating_assumption1(runner, fixture_path):
    result = runner.invoke(
        cli, ["simulate", fixture_path("quadratic_delay.yml"), "--law", "prop:1.0"]
    )

    assert result.exit_code == EXIT_ERROR
    assert "gamma" in result.output


def test_simulate_rejects_a_non_positive_horizon(runner, fixture_path):
    result = runner.invoke(cli, ["simulate", fixture_path("logistic.yml"), "--tend", "0"])

    assert result.exit_code == EXIT_ERROR


def test_sweep_rejects_a_malformed_laws_file(runner, fixture_path, tmpdir):
    laws = tmpdir.join("laws.txt")
    laws.write("prop:0.5\nbogus:1\n")

    result = runner.invoke(
        cli, ["sweep", fixture_path("quadratic_delay.yml"), "--laws", str(laws)]
    )

    assert result.exit_code == EXIT_ERROR


def test_unexpected_errors_exit_with_an_error_status(runner, fixture_path):
    with mock.patch(
        "monostab.cli.api.check_monotone",
        side_effect=np.linalg.LinAlgError("Singular matrix"),
    ):
        result = runner.invoke(cli, ["check-monotone", fixture_path("quadratic.yml")])

    assert result.exit_code == EXIT_ERROR
    assert "error: Singular matrix" in result.output
