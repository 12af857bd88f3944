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

"""Numerical cooperativity and order-preservation checks."""

from __future__ import absolute_import, division, print_function

import numpy as np

from monostab.integrators import IntegratorConfig, integrate_ode
from monostab.model import BoxSet
from monostab.reports import FAIL, PASS, Report
from monostab.utils import first_violation, ordered_pair, spawn_generators

GRID = 32
GRID_CAP = 1000000
JACOBIAN_TOL = 1e-9
ORDER_TOL = 1e-6
POSITIVITY_TOL = 1e-9


def _jacobian_metadata(field, grid, points, tol):
    analytic = field.has_jacobian
    return {
        "grid": grid,
        "points": points,
        "tol": tol,
        "jacobian": "analytic" if analytic else "finite-difference",
        "confidence": "full" if field.smooth else "reduced",
    }


def check_kamke(field, box, grid=GRID, tol=JACOBIAN_TOL, cap=GRID_CAP):
    """Check the cooperative Jacobian condition on a grid of ``box``.

    Passes when every off-diagonal entry ``df_i/dx_j`` is ``>= -tol`` at every
    grid point. Non-smooth fields are checked with finite differences and
    the report says ``confidence: reduced``.

    Args:
        field (VectorField): the field.
        box (BoxSet): the region to sample.
        grid (int): points per axis, lowered so the grid stays under ``cap``.
        tol (float): slack for the sign condition.

    Returns:
        Report: with the witness point and entry on failure.
    """
    points = box.grid(grid, cap=cap)
    n = field.dimension
    per_axis = len(box.axes(grid, cap=cap)[0])
    metadata = _jacobian_metadata(field, per_axis, points.shape[1], tol)
    if n == 1:
        return Report("kamke", PASS, metadata=metadata)

    jacobian = np.asarray(field.jacobian(points), dtype=float)
    if jacobian.ndim == 2:
        jacobian = np.repeat(jacobian[:, :, np.newaxis], points.shape[1], axis=2)
    off_diagonal = ~np.eye(n, dtype=bool)[:, :, np.newaxis]
    violation = first_violation(off_diagonal & (jacobian < -tol))
    if violation is None:
        return Report("kamke", PASS, metadata=metadata)

    i, j, k = violation
    witness = {
        "point": points[:, k],
        "entry": "df%d/dx%d" % (i + 1, j + 1),
        "value": float(jacobian[i, j, k]),
    }
    return Report("kamke", FAIL, witness=witness, metadata=metadata)


def check_assumption2(field, box, grid=GRID, tol=JACOBIAN_TOL, cap=GRID_CAP):
    """Check Kamke in ``x`` and order preservation in ``y`` on ``box x box``.

    Args:
        field (DelayField): the delayed field ``g(x, y)``.
        box (BoxSet): both ``x`` and ``y`` range over it.

    Returns:
        Report: with the witness ``(x, y)`` and entry on failure.
    """
    n = field.dimension
    product = BoxSet(np.concatenate([box.upper, box.upper]))
    points = product.grid(grid, cap=cap)
    per_axis = len(product.axes(grid, cap=cap)[0])
    metadata = _jacobian_metadata(field, per_axis, points.shape[1], tol)
    x, y = points[:n], points[n:]

    jacobian_x, jacobian_y = field.jacobians(x, y)
    m = points.shape[1]
    jacobian_x = np.asarray(jacobian_x, dtype=float)
    jacobian_y = np.asarray(jacobian_y, dtype=float)
    if jacobian_x.ndim == 2:
        jacobian_x = np.repeat(jacobian_x[:, :, np.newaxis], m, axis=2)
    if jacobian_y.ndim == 2:
        jacobian_y = np.repeat(jacobian_y[:, :, np.newaxis], m, axis=2)

    off_diagonal = ~np.eye(n, dtype=bool)[:, :, np.newaxis]
    for prefix, mask, jacobian in (
        ("x", off_diagonal & (jacobian_x < -tol), jacobian_x),
        ("y", jacobian_y < -tol, jacobian_y),
    ):
        violation = first_violation(mask)
        if violation is not None:
            i, j, k = violation
            witness = {
                "x": x[:, k],
                "y": y[:, k],
                "entry": "dg%d/d%s%d" % (i + 1, prefix, j + 1),
                "value": float(jacobian[i, j, k]),
            }
            return Report("assumption2", FAIL, witness=witness, metadata=metadata)
    return Report("assumption2", PASS, metadata=metadata)


def order_violation(lower, upper, tol=ORDER_TOL, times=None):
    """Find where ``lower(t) <= upper(t) + tol`` fails.

    Both trajectories are compared on the union of their nodes up to the
    earlier final time (or on ``times``).

    Returns:
        tuple: ``(t, component, gap)`` of the worst violation, or ``None``.
    """
    if times is None:
        end = min(lower.t_final, upper.t_final)
        times = np.union1d(lower.times, upper.times)
        times = times[times <= end]
    gap = lower(times) - upper(times)
    if gap.ndim == 1:
        gap = gap[:, np.newaxis]
    worst = np.unravel_index(np.argmax(gap), gap.shape)
    if gap[worst] <= tol:
        return None
    return float(times[worst[1]]), int(worst[0]), float(gap[worst])


def check_monotone_empirical(field, box, trials=20, seed=None, cfg=None, tol=ORDER_TOL):
    """Integrate random ordered pairs of initial states and compare them.

    Each trial draws ``x0' <= x0`` in ``box``, integrates both and requires
    ``x(t, x0') <= x(t, x0) + tol`` at the shared times and nonnegative
    states throughout.

    Returns:
        Report: with the violating pair on failure.
    """
    cfg = cfg or IntegratorConfig(t_end=50.0)
    metadata = {"trials": trials, "tol": tol, "t_end": cfg.t_end}
    for trial, rng in enumerate(spawn_generators(seed, trials)):
        low, high = ordered_pair(rng, box.upper)
        lower = integrate_ode(field, low, cfg)
        upper = integrate_ode(field, high, cfg)
        violation = order_violation(lower, upper, tol=tol)
        if violation is not None:
            t, component, gap = violation
            witness = {
                "trial": trial,
                "lower": low,
                "upper": high,
                "t": t,
                "component": component + 1,
                "gap": gap,
            }
            return Report("monotone", FAIL, witness=witness, metadata=metadata)
        for label, trajectory, start in (("lower", lower, low), ("upper", upper, high)):
            minimum = float(trajectory.states.min())
            if minimum < -POSITIVITY_TOL:
                witness = {"trial": trial, label: start, "min_state": minimum}
                return Report("monotone", FAIL, witness=witness, metadata=metadata)
    return Report("monotone", PASS, metadata=metadata)
