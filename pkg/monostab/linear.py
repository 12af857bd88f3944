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

"""Stability of linear positive systems ``x' = Ax`` and ``x' = Ax + By(t - tau)``.

For a Metzler ``A`` the following are equivalent: ``A`` is Hurwitz, some
``w > 0`` has ``Aw < 0``, ``max_i x_i / w_i`` is a Lyapunov function, and
``DA`` is Hurwitz for every positive diagonal ``D``.
"""

from __future__ import absolute_import, division, print_function

import numpy as np

from monostab.errors import EigenFailure, LPNumericalFailure
from monostab.integrators import IntegratorConfig, integrate_dde
from monostab.lyapunov import MaxSepLyap
from monostab.model import DelayField
from monostab.reports import FAIL, PASS, PRECONDITION, Report
from monostab.utils import log_uniform, spawn_generators

METZLER_TOL = 1e-12
HURWITZ_TOL = 1e-9
PIVOT_TOL = 1e-11
MAX_PIVOTS = 5000


def _square(A):
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("Malformed matrix: expected a square matrix, got shape %s" % (A.shape,))
    return A


def is_metzler(A):
    """Whether every off-diagonal entry is ``>= -1e-12``."""
    A = _square(A)
    off_diagonal = A[~np.eye(A.shape[0], dtype=bool)]
    return bool(np.all(off_diagonal >= -METZLER_TOL))


def spectral_abscissa(A):
    A = _square(A)
    if not np.all(np.isfinite(A)):
        raise EigenFailure("the matrix has non-finite entries")
    try:
        eigenvalues = np.linalg.eigvals(A)
    except np.linalg.LinAlgError as e:
        raise EigenFailure("eigenvalue computation failed: %s" % e)
    return float(np.max(eigenvalues.real))


def is_hurwitz(A):
    """Whether every eigenvalue has real part ``< -1e-9``."""
    return spectral_abscissa(A) < -HURWITZ_TOL


def _pivot(tableau, row, col):
    tableau[row] /= tableau[row, col]
    for r in range(tableau.shape[0]):
        if r != row and tableau[r, col] != 0.0:
            tableau[r] -= tableau[r, col] * tableau[row]


def _iterate(tableau, basis, allowed):
    for _ in range(MAX_PIVOTS):
        costs = tableau[-1, :-1]
        entering = [j for j in allowed if costs[j] < -PIVOT_TOL]
        if not entering:
            return "optimal"
        col = entering[0]
        column = tableau[:-1, col]
        rhs = tableau[:-1, -1]
        candidates = np.flatnonzero(column > PIVOT_TOL)
        if not candidates.size:
            return "unbounded"
        ratios = rhs[candidates] / column[candidates]
        best = ratios.min()
        ties = candidates[ratios <= best + PIVOT_TOL * (1.0 + abs(best))]
        row = min(ties, key=lambda r: basis[r])
        _pivot(tableau, row, col)
        basis[row] = col
    raise LPNumericalFailure("the simplex method did not terminate after %d pivots" % MAX_PIVOTS)


def _price(tableau, basis, cost):
    tableau[-1, :] = 0.0
    tableau[-1, : len(cost)] = cost
    for row, var in enumerate(basis):
        if tableau[-1, var] != 0.0:
            tableau[-1] -= tableau[-1, var] * tableau[row]


def simplex(c, A_ub, b_ub):
    """Minimise ``c x`` subject to ``A_ub x <= b_ub`` and ``x >= 0``.

    Dense two-phase tableau with Bland's rule; meant for small problems.

    Returns:
        tuple: ``(status, x, value)`` where ``status`` is ``"optimal"``,
            ``"infeasible"`` or ``"unbounded"``.
    """
    c = np.asarray(c, dtype=float)
    A_ub = np.atleast_2d(np.asarray(A_ub, dtype=float))
    b_ub = np.asarray(b_ub, dtype=float)
    m, n = A_ub.shape
    negative = np.flatnonzero(b_ub < 0)
    k = len(negative)
    width = n + m + k
    tableau = np.zeros((m + 1, width + 1))
    basis = []
    artificial = {}
    for i in range(m):
        sign = -1.0 if b_ub[i] < 0 else 1.0
        tableau[i, :n] = sign * A_ub[i]
        tableau[i, n + i] = sign
        tableau[i, -1] = sign * b_ub[i]
        if sign < 0:
            column = n + m + len(artificial)
            artificial[i] = column
            tableau[i, column] = 1.0
            basis.append(column)
        else:
            basis.append(n + i)

    if k:
        cost = np.zeros(width)
        cost[n + m :] = 1.0
        _price(tableau, basis, cost)
        _iterate(tableau, basis, range(width))
        infeasibility = -tableau[-1, -1]
        if infeasibility > 1e-9 * (1.0 + np.max(np.abs(b_ub))):
            return "infeasible", None, None
        for row, var in enumerate(basis):
            if var < n + m:
                continue
            for col in range(n + m):
                if abs(tableau[row, col]) > PIVOT_TOL:
                    _pivot(tableau, row, col)
                    basis[row] = col
                    break

    cost = np.zeros(width)
    cost[:n] = c
    _price(tableau, basis, cost)
    status = _iterate(tableau, basis, range(n + m))
    if status != "optimal":
        return status, None, None
    x = np.zeros(width)
    for row, var in enumerate(basis):
        x[var] = tableau[row, -1]
    x = np.maximum(x[:n], 0.0)
    return "optimal", x, float(c @ x)


def find_positive_w(A):
    """Find ``w >= 1`` with ``Aw <= -1``, or ``None`` when there is none.

    ``Aw < 0`` is normalised to ``Aw <= -1`` by scaling. Substituting
    ``w = 1 + u`` turns the problem into the standard form
    ``A u <= -1 - A 1``, ``u >= 0``, minimising ``sum(u)``.

    Raises:
        LPNumericalFailure: the simplex method ended with a ``w`` that does
            not satisfy the constraints.
    """
    A = _square(A)
    n = A.shape[0]
    ones = np.ones(n)
    status, u, _ = simplex(ones, A, -ones - A @ ones)
    if status == "infeasible":
        return None
    if status != "optimal":
        raise LPNumericalFailure("the feasibility problem is %s" % status)
    w = ones + u
    slack = A @ w
    if np.any(slack > -1.0 + 1e-7 * (1.0 + np.abs(A).sum(axis=1) * w.max())):
        raise LPNumericalFailure("the simplex solution violates Aw <= -1: Aw = %r" % list(slack))
    return w


def decay_rate(A, w):
    """``min_i -(Aw)_i / w_i``, the rate ``c`` in ``D+V <= -c V`` for ``V = max x_i / w_i``."""
    A = _square(A)
    w = np.asarray(w, dtype=float)
    return float(np.min(-(A @ w) / w))


def linear_max_sep_lyap(A, w):
    """``V(x) = max_i x_i / w_i`` for ``x' = Ax`` with ``Aw < 0``."""
    A = _square(A)
    w = np.asarray(w, dtype=float)
    if np.any(w <= 0) or np.any(A @ w >= 0):
        raise ValueError("Malformed w: need w > 0 and Aw < 0, got w = %r" % list(w))
    return MaxSepLyap.linear(w)


def check_d_stability_linear(A, trials=100, seed=None, low=1e-3, high=1e3):
    """Check that ``DA`` stays Hurwitz for random positive diagonal ``D``.

    The entries of ``D`` are log-uniform in ``[low, high]``.

    Returns:
        Report: PASS, FAIL with the offending diagonal, or PRECONDITION when
            ``A`` is not a Hurwitz Metzler matrix.
    """
    A = _square(A)
    metadata = {"trials": trials, "low": low, "high": high}
    if not is_metzler(A) or not is_hurwitz(A):
        witness = {"reason": "A is not a Hurwitz Metzler matrix"}
        return Report("d-stability", PRECONDITION, witness=witness, metadata=metadata)
    for trial, rng in enumerate(spawn_generators(seed, trials)):
        d = log_uniform(rng, low, high, size=A.shape[0])
        abscissa = spectral_abscissa(d[:, np.newaxis] * A)
        if not abscissa < -HURWITZ_TOL:
            witness = {"trial": trial, "diagonal": d, "abscissa": abscissa}
            return Report("d-stability", FAIL, witness=witness, metadata=metadata)
    return Report("d-stability", PASS, metadata=metadata)


def check_linear_delay_robustness(A, B, law, history, cfg=None):
    """Integrate ``x' = Ax + Bx(t - tau(t))`` and require convergence.

    Returns:
        Report: PASS when the run converged, FAIL otherwise, PRECONDITION
            when ``A`` is not Metzler, ``B`` has a negative entry or ``A + B``
            is not Hurwitz.

    Raises:
        Assumption1Violated: the delay law fails the Assumption-1 check.
    """
    A = _square(A)
    B = _square(B)
    cfg = cfg or IntegratorConfig()
    cfg = cfg.replace(t_end=law.horizon(cfg.t_end))
    metadata = {"law": law.label, "t_end": cfg.t_end}
    reasons = []
    if not is_metzler(A):
        reasons.append("A is not Metzler")
    if np.any(B < -METZLER_TOL):
        reasons.append("B has a negative entry")
    if not is_hurwitz(A + B):
        reasons.append("A + B is not Hurwitz")
    if reasons:
        return Report(
            "linear-delay", PRECONDITION, witness={"reason": "; ".join(reasons)}, metadata=metadata
        )

    law.check_assumption1()
    trajectory = integrate_dde(DelayField.linear(A, B, law=law), history, cfg)
    metadata.update(
        {
            "terminal_norm": trajectory.terminal_norm,
            "t_final": trajectory.t_final,
            "t_converge": trajectory.t_converge,
            "run": trajectory.status,
        }
    )
    status = PASS if trajectory.converged else FAIL
    return Report("linear-delay", status, metadata=metadata)
