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
import pytest
from scipy.optimize import linprog

from monostab.lyapunov import dini_derivative
from monostab.linear import (
    check_d_stability_linear,
    check_linear_delay_robustness,
    decay_rate,
    find_positive_w,
    is_hurwitz,
    is_metzler,
    linear_max_sep_lyap,
    simplex,
    spectral_abscissa,
)
from monostab.integrators import IntegratorConfig
from monostab.model import DelayLaw, InitialHistory, VectorField
from monostab.reports import PASS, PRECONDITION

STABLE = [[-2.0, 1.0], [1.0, -2.0]]
UNSTABLE = [[0.0, 1.0], [1.0, 0.0]]


@pytest.mark.parametrize(
    "A,expected",
    [
        (STABLE, True),
        ([[-1.0, -0.5], [0.0, -1.0]], False),
        ([[-7.0]], True),
    ],
)
def test_is_metzler(A, expected):
    assert is_metzler(A) == expected


@pytest.mark.parametrize(
    "A,expected",
    [
        (STABLE, True),
        (UNSTABLE, False),
        (np.zeros((2, 2)), False),
    ],
)
def test_is_hurwitz(A, expected):
    assert is_hurwitz(A) == expected


def test_spectral_abscissa():
    assert spectral_abscissa(STABLE) == pytest.approx(-1.0)


def test_square_matrix_required():
    with pytest.raises(ValueError) as excinfo:
        is_metzler([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])

    assert "Malformed matrix" in str(excinfo.value)


def test_find_positive_w_stable():
    expected = np.array([1.0, 1.0])
    result = find_positive_w(STABLE)

    np.testing.assert_allclose(result, expected)


def test_find_positive_w_unstable():
    assert find_positive_w(UNSTABLE) is None


def test_find_positive_w_scalar():
    np.testing.assert_allclose(find_positive_w([[-1.0]]), [1.0])


def test_find_positive_w_needs_nontrivial_w():
    A = np.array([[-1.0, 3.0], [0.0, -4.0]])

    w = find_positive_w(A)

    assert np.all(w >= 1.0 - 1e-9)
    assert np.all(A @ w <= -1.0 + 1e-9)


def test_simplex_small_problem():
    status, x, value = simplex([-1.0, -1.0], [[1.0, 2.0], [3.0, 1.0]], [4.0, 6.0])

    assert status == "optimal"
    np.testing.assert_allclose(x, [1.6, 1.2])
    assert value == pytest.approx(-2.8)


def test_simplex_unbounded():
    status, _, _ = simplex([-1.0, 0.0], [[0.0, 1.0]], [1.0])

    assert status == "unbounded"


def test_find_positive_w_agrees_with_linprog_and_eigenvalues():
    rng = np.random.default_rng(20261018)
    for _ in range(200):
        n = int(rng.integers(1, 6))
        A = rng.uniform(0.0, 1.0, size=(n, n))
        A[np.diag_indices(n)] = -rng.uniform(0.0, 2.0 * n, size=n)
        if abs(spectral_abscissa(A)) < 1e-3:
            continue

        w = find_positive_w(A)
        oracle = linprog(
            np.ones(n),
            A_ub=A,
            b_ub=-np.ones(n),
            bounds=[(1.0, None)] * n,
            method="highs",
        )

        assert (w is not None) == (oracle.status == 0)
        assert (w is not None) == is_hurwitz(A)
        if w is not None:
            assert np.all(A @ w <= -1.0 + 1e-6)


def test_decay_rate():
    assert decay_rate(STABLE, [1.0, 1.0]) == pytest.approx(1.0)


def test_linear_max_sep_lyap():
    lyap = linear_max_sep_lyap(STABLE, [1.0, 1.0])
    field = VectorField.linear(STABLE)

    assert lyap(np.array([1.0, 0.5])) == 1.0
    assert lyap(np.zeros(2)) == 0.0
    assert dini_derivative(lyap, field, np.array([1.0, 1.0])) == pytest.approx(-1.0)


def test_linear_max_sep_lyap_scaled():
    lyap = linear_max_sep_lyap([[-1.0, 0.0], [0.0, -1.0]], [2.0, 1.0])

    assert lyap(np.array([1.0, 0.25])) == 0.5


def test_linear_max_sep_lyap_rejects_bad_w():
    with pytest.raises(ValueError):
        linear_max_sep_lyap(UNSTABLE, [1.0, 1.0])


def test_check_d_stability_linear():
    result = check_d_stability_linear(STABLE, trials=100, seed=0)

    assert result.status == PASS


def test_check_d_stability_linear_precondition():
    result = check_d_stability_linear(UNSTABLE, trials=10, seed=0)

    assert result.status == PRECONDITION


def test_check_linear_delay_robustness():
    A = -3.0 * np.eye(2)
    B = [[0.0, 1.0], [1.0, 0.0]]
    cfg = IntegratorConfig(t_end=400.0, convergence_tol=1e-3, convergence_window=10.0)

    result = check_linear_delay_robustness(
        A, B, DelayLaw.proportional(0.5), InitialHistory.constant([1.0, 1.0]), cfg=cfg
    )

    assert result.status == PASS
    assert result.metadata["law"] == "prop:0.5"
    assert result.metadata["terminal_norm"] <= 1e-3


def test_check_linear_delay_robustness_zero_b():
    cfg = IntegratorConfig(t_end=50.0)

    result = check_linear_delay_robustness(
        -np.eye(2),
        np.zeros((2, 2)),
        DelayLaw.constant(1.0),
        InitialHistory.constant([1.0, 1.0]),
        cfg=cfg,
    )

    assert result.status == PASS


def test_check_linear_delay_robustness_precondition():
    result = check_linear_delay_robustness(
        -np.eye(2),
        [[0.0, 2.0], [2.0, 0.0]],
        DelayLaw.constant(1.0),
        InitialHistory.constant([1.0, 1.0]),
    )

    assert result.status == PRECONDITION
    assert "A + B is not Hurwitz" in result.witness["reason"]
