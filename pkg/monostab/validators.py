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

"""Model validators.

Each ``validate_*`` function raises the error named after the violated
condition; each ``is_*`` function answers the same question with a bool.
"""

from __future__ import absolute_import, division, print_function

import numpy as np

from monostab.errors import (
    Assumption1Violated,
    DomainError,
    HistoryGap,
    HistoryValidationFailure,
    PathDomainError,
    PathValidationFailure,
    PsiValidationFailure,
)
from monostab.expr import Expr, free_variables

ENVELOPE_CHECKPOINTS = 11


def check_assumption1(law, horizon=1e4, samples=100000):
    """Check that ``t - tau(t)`` diverges, and return ``tau_max``.

    The limit cannot be decided numerically, so the lower envelope
    ``inf_{s >= t} (s - tau(s))`` is sampled at evenly spaced checkpoints of
    ``[0, horizon]`` and must increase strictly from one to the next.
    Proportional and sinusoidal laws are additionally checked analytically.

    Args:
        law (DelayLaw): the delay.
        horizon (float): the sampled horizon ``T_check``.
        samples (int): number of samples.

    Returns:
        float: ``tau_max = max(0, -min_t (t - tau(t)))`` on the horizon.

    Raises:
        Assumption1Violated: the delay is negative, not finite, or ``t - tau(t)``
            does not grow.
    """
    params = law.params
    if law.kind == "proportional" and not 0.0 < params["gamma"] < 1.0:
        raise Assumption1Violated(
            "%s: a proportional delay needs 0 < gamma < 1, got %r" % (law.label, params["gamma"])
        )
    if law.kind == "sinusoidal" and not params["a"] >= params["b"] >= 0.0:
        raise Assumption1Violated(
            "%s: a sinusoidal delay needs a >= b >= 0" % law.label
        )
    if law.kind == "constant" and params["c"] < 0:
        raise Assumption1Violated("%s: the delay is negative" % law.label)

    t = np.linspace(0.0, horizon, int(samples))
    try:
        tau = np.asarray(law(t), dtype=float)
    except DomainError as e:
        raise Assumption1Violated("%s: the delay cannot be evaluated: %s" % (law.label, e))
    if not np.all(np.isfinite(tau)):
        raise Assumption1Violated("%s: the delay is not finite" % law.label)
    negative = np.flatnonzero(tau < 0)
    if negative.size:
        raise Assumption1Violated(
            "%s: the delay is negative at t = %r" % (law.label, t[negative[0]])
        )

    lag = t - tau
    envelope = np.minimum.accumulate(lag[::-1])[::-1]
    checkpoints = envelope[np.linspace(0, len(t) - 1, ENVELOPE_CHECKPOINTS).astype(int)]
    if np.any(np.diff(checkpoints) <= 0):
        raise Assumption1Violated(
            "%s: t - tau(t) does not diverge on [0, %g]" % (law.label, horizon)
        )
    return max(0.0, -float(lag.min()))


def is_assumption1(law, horizon=1e4, samples=100000):
    try:
        check_assumption1(law, horizon=horizon, samples=samples)
    except Assumption1Violated:
        return False
    return True


def validate_path(path, points=1024, margin=1e-12):
    """Check that every ``rho_i`` is class-K with ``rho_i^{-1}`` differentiable.

    ``rho_i(0) = 0`` and strict growth are checked on a dense grid of
    ``[0, sbar]``; the derivative condition is checked strictly inside the
    interval, so ``rho_i(s) = sqrt(s)`` is accepted.

    Raises:
        PathDomainError: ``rho`` cannot be evaluated on ``[0, sbar]``.
        PathValidationFailure: a class-K or derivative condition fails.
    """
    s = np.linspace(0.0, path.sbar, int(points))
    for i, component in enumerate(path.rho):
        try:
            values = np.asarray(component(s), dtype=float)
        except DomainError as e:
            raise PathDomainError("rho_%d cannot be evaluated on [0, sbar]: %s" % (i + 1, e))
        if not np.all(np.isfinite(values)):
            raise PathDomainError("rho_%d is not finite on [0, sbar]" % (i + 1))
        if abs(values[0]) > margin:
            raise PathValidationFailure("rho_%d(0) = %r is not zero" % (i + 1, values[0]))
        steps = np.diff(values)
        bad = np.flatnonzero(steps <= margin)
        if bad.size:
            raise PathValidationFailure(
                "rho_%d is not strictly increasing near s = %r" % (i + 1, float(s[bad[0]]))
            )
        try:
            with np.errstate(divide="ignore", invalid="ignore"):
                slopes = np.asarray(component.derivative(s[1:]), dtype=float)
        except DomainError as e:
            raise PathDomainError("d rho_%d/ds cannot be evaluated: %s" % (i + 1, e))
        bad = np.flatnonzero(~(np.isfinite(slopes) & (slopes > 0)))
        if bad.size:
            raise PathValidationFailure(
                "the inverse of rho_%d has no positive derivative at s = %r"
                % (i + 1, float(s[1:][bad[0]]))
            )


def is_class_k_path(path, points=1024, margin=1e-12):
    try:
        validate_path(path, points=points, margin=margin)
    except (PathDomainError, PathValidationFailure):
        return False
    return True


def validate_psi(psi, box, y_bound=1.0, points=1024, margin=1e-12):
    """Check the scaling conditions ``psi_i(x_i, 0) = 0`` and growth in ``y_i``.

    Args:
        psi (ScalingPsi): the scaling.
        box (BoxSet): ``x_i`` is sampled on ``[0, v_i]``.
        y_bound (float): ``y_i`` is sampled on ``[-y_bound, y_bound]``.

    Raises:
        PsiValidationFailure: a condition fails; the message names the witness.
    """
    if psi.dimension != box.dimension:
        raise PsiValidationFailure(
            "psi has %d components for a box of dimension %d" % (psi.dimension, box.dimension)
        )
    y_axis = np.linspace(-y_bound, y_bound, int(points))
    for i in range(psi.dimension):
        component = psi.components[i]
        if isinstance(component, Expr):
            allowed = {"x%d" % (i + 1), "y%d" % (i + 1)}
            extra = free_variables(component) - allowed
            if extra:
                raise PsiValidationFailure(
                    "psi_%d may only depend on x%d and y%d, uses %s"
                    % (i + 1, i + 1, i + 1, ", ".join(sorted(extra)))
                )
        x_axis = np.linspace(0.0, box.upper[i], min(int(points), 128))
        xx, yy = np.meshgrid(x_axis, y_axis, indexing="ij")
        try:
            at_zero = np.asarray(psi.component(i, x_axis, np.zeros_like(x_axis)), dtype=float)
            values = np.asarray(psi.component(i, xx, yy), dtype=float) + np.zeros_like(xx)
        except DomainError as e:
            raise PsiValidationFailure("psi_%d cannot be evaluated: %s" % (i + 1, e))
        bad = np.flatnonzero(np.abs(at_zero + np.zeros_like(x_axis)) > margin)
        if bad.size:
            raise PsiValidationFailure(
                "psi_%d(x, 0) != 0 at x%d = %r" % (i + 1, i + 1, x_axis[bad[0]])
            )
        steps = np.diff(values[1:], axis=1)
        bad = np.argwhere(~(steps > margin))
        if bad.size:
            row, col = bad[0]
            raise PsiValidationFailure(
                "psi_%d is not increasing in y%d at x%d = %r, y%d = %r"
                % (i + 1, i + 1, i + 1, x_axis[row + 1], i + 1, y_axis[col])
            )


def validate_history(history, tau_max, points=1024):
    """Check ``phi >= 0`` on ``[-tau_max, 0]`` and that it is defined there.

    Raises:
        HistoryGap: the history starts after ``-tau_max``.
        HistoryValidationFailure: ``phi`` is negative somewhere.
    """
    if history.start > -tau_max:
        raise HistoryGap(
            "the history starts at %r but the delay reaches back to %r"
            % (history.start, -tau_max)
        )
    times = np.linspace(-tau_max, 0.0, int(points)) if tau_max > 0 else np.zeros(1)
    for t in times:
        value = history(t)
        if np.any(value < 0):
            raise HistoryValidationFailure("phi(%r) = %r is not nonnegative" % (t, list(value)))
