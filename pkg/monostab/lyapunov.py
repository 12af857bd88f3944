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

"""Max-separable Lyapunov functions ``V(x) = max_i V_i(x_i)``.

Components come in four flavours: the linear ``x_i / w_i``, a closed-form
expression in ``s``, the inverse of a path component ``rho_i`` and a
monotone table built from a trajectory that decreases to the origin.
"""

from __future__ import absolute_import, division, print_function

import csv

import numpy as np
from scipy.interpolate import PchipInterpolator

from monostab.errors import (
    NoConvergence,
    NondifferentiablePoint,
    NonmonotoneComponent,
    NotInOmega,
)
from monostab.integrators import IntegratorConfig, integrate_ode
from monostab.model import BoxSet, ScalarFunction
from monostab.reports import FAIL, PASS, Report

TIE_TOL = 1e-9
DECREASE_MARGIN = 1e-9
TABLE_SAMPLES = 4096
STEEP_SLOPE = 1e8


def _invert(func, targets, upper):
    """Solve ``func(s) = target`` for increasing ``func`` with ``func(0) = 0``."""
    targets = np.maximum(np.asarray(targets, dtype=float), 0.0)
    lo = np.zeros_like(targets)
    hi = np.full_like(targets, float(upper))
    for _ in range(64):
        short = np.asarray(func(hi)) < targets
        if not np.any(short):
            break
        hi = np.where(short, 2 * hi, hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        below = np.asarray(func(mid)) < targets
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if np.all(hi - lo <= 4 * np.finfo(float).eps * np.maximum(hi, 1e-300)):
            break
    return 0.5 * (lo + hi)


class LinearComponent(object):
    """``V_i(x_i) = x_i / w_i``."""

    extrapolated_below = 0.0

    def __init__(self, w):
        self.w = float(w)

    def __call__(self, x):
        return np.asarray(x, dtype=float) / self.w

    def derivative(self, x):
        return np.full_like(np.asarray(x, dtype=float), 1.0 / self.w)

    def inverse(self, level):
        return np.asarray(level, dtype=float) * self.w


class ExpressionComponent(object):
    """``V_i`` given in closed form as an expression in ``s``."""

    extrapolated_below = 0.0

    def __init__(self, source, upper=1.0):
        self.function = source if isinstance(source, ScalarFunction) else ScalarFunction(source)
        self.upper = float(upper)

    def __call__(self, x):
        return np.asarray(self.function(np.asarray(x, dtype=float)), dtype=float)

    def derivative(self, x):
        return np.asarray(self.function.derivative(np.asarray(x, dtype=float)), dtype=float)

    def inverse(self, level):
        return _invert(self, level, self.upper)


class PathComponent(object):
    """``V_i = rho_i^{-1}`` for a class-K path component ``rho_i``."""

    extrapolated_below = 0.0

    def __init__(self, rho, sbar):
        self.rho = rho
        self.sbar = float(sbar)

    def __call__(self, x):
        return _invert(self.rho, x, self.sbar)

    def derivative(self, x):
        s = np.maximum(self(x), 1e-300)
        with np.errstate(divide="ignore", over="ignore"):
            slope = np.asarray(self.rho.derivative(s), dtype=float)
            return 1.0 / slope

    def inverse(self, level):
        return np.asarray(self.rho(np.asarray(level, dtype=float)), dtype=float)


class TabulatedComponent(object):
    """``V_i(x_i) = exp(-T_i(x_i))`` with ``T_i`` the inverse of a decreasing ``omega_i``.

    ``T_i`` is a PCHIP interpolant of the ``(omega_i(t_k), t_k)`` table, so it
    stays monotone between nodes. Below the smallest tabulated value ``cut``
    the component continues as the straight line through the origin and is
    reported as extrapolated.

    Args:
        values (numpy.ndarray): strictly increasing ``omega_i`` samples.
        times (numpy.ndarray): the matching times, strictly decreasing.
        rate (callable): ``t -> d omega_i / dt``, negative.
    """

    def __init__(self, values, times, rate):
        self.values = np.asarray(values, dtype=float)
        self.times = np.asarray(times, dtype=float)
        self.rate = rate
        self.inverse_time = PchipInterpolator(self.values, self.times, extrapolate=True)
        self.cut = float(self.values[0])
        self.cut_level = float(np.exp(-self.times[0]))
        self.extrapolated_below = self.cut

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        inside = x >= self.cut
        result = self.cut_level * x / self.cut
        if np.any(inside):
            result = np.where(inside, np.exp(-self.inverse_time(np.maximum(x, self.cut))), result)
        return result

    def time(self, x):
        return self.inverse_time(np.asarray(x, dtype=float))

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        clipped = np.maximum(x, self.cut)
        t = self.inverse_time(clipped)
        with np.errstate(divide="ignore"):
            table_slope = -np.exp(-t) / np.asarray(self.rate(t), dtype=float)
        return np.where(x >= self.cut, table_slope, self.cut_level / self.cut)

    def one_sided(self, x):
        """Left and right derivatives at ``x``."""
        left = self.cut_level / self.cut if x <= self.cut else float(self.derivative(x))
        right = float(self.derivative(max(x, self.cut)))
        return left, right

    def inverse(self, level):
        level = np.asarray(level, dtype=float)
        return _invert(self, level, self.values[-1])


class MaxSepLyap(object):
    """``V(x) = max_i V_i(x_i)`` on the working box.

    Args:
        components (list): one component per coordinate; each maps ``x_i`` to
            ``V_i(x_i)`` and has ``derivative`` and ``inverse``.
        box (BoxSet): the working box ``v``.
        warnings (list(str)): notes gathered while building the function.
    """

    def __init__(self, components, box=None, warnings=None):
        self.components = list(components)
        self.box = box
        self.warnings = list(warnings or [])

    @property
    def dimension(self):
        return len(self.components)

    def component_values(self, x):
        """``V_i(x_i)`` for every ``i``; shape ``(n,)`` or ``(n, m)``."""
        x = np.asarray(x, dtype=float)
        return np.array([component(x[i]) for i, component in enumerate(self.components)])

    def component_derivatives(self, x):
        x = np.asarray(x, dtype=float)
        return np.array(
            [component.derivative(x[i]) for i, component in enumerate(self.components)]
        )

    def __call__(self, x):
        values = self.component_values(x).max(axis=0)
        return float(values) if np.ndim(values) == 0 else values

    value = __call__

    def inverse(self, level):
        """``(V_1^{-1}(level), ..., V_n^{-1}(level))``."""
        return np.array([float(component.inverse(level)) for component in self.components])

    def level_box(self, level):
        """The sublevel box ``{V <= level}``."""
        return BoxSet(self.inverse(level))

    def extrapolated(self, x):
        """Whether any coordinate of ``x`` lies in an extrapolated region."""
        x = np.asarray(x, dtype=float)
        limits = np.array([component.extrapolated_below for component in self.components])
        if x.ndim == 1:
            return bool(np.any(x < limits))
        return np.any(x < limits[:, np.newaxis], axis=0)

    def table(self, points=256):
        """Rows ``(i, x_i, V_i, dV_i)`` sampled on ``[0, v_i]``."""
        if self.box is None:
            raise ValueError("a working box is needed to tabulate V")
        rows = []
        for i, component in enumerate(self.components):
            x = np.linspace(0.0, self.box.upper[i], int(points))
            with np.errstate(divide="ignore", invalid="ignore"):
                values = component(x)
                slopes = component.derivative(x)
            for xi, vi, di in zip(x, values, slopes):
                rows.append((i + 1, float(xi), float(vi), float(di)))
        return rows

    def write_csv(self, stream, points=256):
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["i", "x_i", "V_i", "dV_i"])
        for i, xi, vi, di in self.table(points):
            writer.writerow([i, "%.17g" % xi, "%.17g" % vi, "%.17g" % di])

    def to_csv(self, path, points=256):
        with open(path, "w") as stream:
            self.write_csv(stream, points=points)

    @classmethod
    def linear(cls, w):
        """``V(x) = max_i x_i / w_i``."""
        w = np.asarray(w, dtype=float)
        return cls([LinearComponent(wi) for wi in w], box=BoxSet(w))

    @classmethod
    def from_path(cls, path):
        """``V_i = rho_i^{-1}`` on the box ``rho(sbar)``."""
        components = [PathComponent(rho, path.sbar) for rho in path.rho]
        return cls(components, box=BoxSet(path.corner))

    @classmethod
    def from_expressions(cls, sources, box):
        """``V_i`` given as expressions in ``s``, e.g. ``["s", "s^2"]``."""
        return cls(
            [ExpressionComponent(source, upper) for source, upper in zip(sources, box.upper)],
            box=box,
        )


class DecreaseReport(Report):
    """The outcome of :func:`verify_decrease`.

    ``rows`` tabulate the estimated decrease margin ``mu`` per ``V`` level.
    """

    def __init__(self, status, mu, witness=None, metadata=None):
        super(DecreaseReport, self).__init__(
            "decrease",
            status,
            witness=witness,
            metadata=metadata,
            columns=["level_low", "level_high", "mu"],
            rows=mu,
        )

    @property
    def mu(self):
        return np.array([row[2] for row in self.rows])


def _active(values, tie_tol):
    level = values.max(axis=0)
    return level, (level - values) <= tie_tol * (1.0 + level)


def dini_derivative(lyap, field, x, tie_tol=TIE_TOL):
    """Upper-right derivative of ``V`` along ``field`` at ``x``.

    Equals ``max_{j in J(x)} V_j'(x_j) f_j(x)`` where ``J(x)`` holds the
    indices whose ``V_j(x_j)`` ties with ``V(x)`` up to ``tie_tol * (1 + V(x))``.

    Raises:
        NondifferentiablePoint: an active tabulated component has a kink at
            ``x_j`` with disagreeing one-sided derivatives.
    """
    x = np.asarray(x, dtype=float)
    values = lyap.component_values(x)
    level, active = _active(values, tie_tol)
    if level <= 0.0:
        return 0.0
    flow = np.asarray(field(x), dtype=float)
    terms = []
    for j in np.flatnonzero(active):
        component = lyap.components[j]
        if isinstance(component, TabulatedComponent) and x[j] == component.cut:
            left, right = component.one_sided(x[j])
            if abs(left - right) > 1e-6 * max(abs(left), abs(right)):
                raise NondifferentiablePoint(
                    "V_%d has a kink at x%d = %r" % (j + 1, j + 1, x[j])
                )
        terms.append(float(component.derivative(x[j])) * flow[j])
    return max(terms)


def dini_derivatives(lyap, field, points, tie_tol=TIE_TOL):
    """Vectorised :func:`dini_derivative` over ``points`` of shape ``(n, m)``."""
    values = lyap.component_values(points)
    level, active = _active(values, tie_tol)
    flow = np.asarray(field(points), dtype=float)
    with np.errstate(invalid="ignore", over="ignore"):
        terms = lyap.component_derivatives(points) * flow
    terms = np.where(active, terms, -np.inf)
    result = terms.max(axis=0)
    return np.where(level > 0, result, 0.0)


def verify_decrease(lyap, field, box, grid=64, margin=DECREASE_MARGIN, levels=32):
    """Check ``D+V(x) < -margin * V(x)`` on a grid of ``box``.

    Args:
        lyap (MaxSepLyap): the candidate.
        field (VectorField): the dynamics.
        box (BoxSet): the sampled region.
        grid (int): points per axis.
        margin (float): required relative decrease.
        levels (int): number of ``V`` bins for the margin estimate.

    Returns:
        DecreaseReport: PASS when no sampled point violates the decrease;
            ``mu`` holds the smallest ``-D+V`` per level bin.
    """
    points = box.grid(grid)
    values = lyap(points)
    nonzero = values > 0
    points, values = points[:, nonzero], values[nonzero]
    metadata = {"grid": grid, "points": int(points.shape[1]), "margin": margin}
    if not points.shape[1]:
        witness = {"reason": "no nonzero grid point"}
        return DecreaseReport(FAIL, [], witness=witness, metadata=metadata)

    dini = dini_derivatives(lyap, field, points)
    extrapolated = lyap.extrapolated(points)
    metadata["extrapolated_points"] = int(np.count_nonzero(extrapolated))

    edges = np.linspace(0.0, values.max(), int(levels) + 1)
    bins = np.clip(np.searchsorted(edges, values, side="left") - 1, 0, int(levels) - 1)
    mu = []
    for b in range(int(levels)):
        members = bins == b
        if np.any(members):
            mu.append((edges[b], edges[b + 1], float(np.min(-dini[members]))))

    violations = ~(dini < -margin * values)
    ratio = dini / values
    worst = int(np.nanargmax(np.where(np.isnan(ratio), np.inf, ratio)))
    witness = {
        "point": points[:, worst],
        "dini": float(dini[worst]),
        "V": float(values[worst]),
        "violations": int(np.count_nonzero(violations)),
    }
    metadata["min_ratio"] = float(np.min(-ratio[~extrapolated])) if np.any(~extrapolated) else None
    status = PASS if not np.any(violations) else FAIL
    return DecreaseReport(status, mu, witness=witness, metadata=metadata)


def construct_from_trajectory(field, w, cfg=None):
    """Build ``V_i(x_i) = exp(-T_i(x_i))`` from the trajectory through ``w``.

    ``T_i`` inverts the decreasing coordinate ``omega_i(t) = x_i(t, w)``, so
    ``V(omega(t)) = exp(-t)`` along the trajectory and ``D+V <= -V`` for a
    monotone field.

    Args:
        field (VectorField): the dynamics.
        w (numpy.ndarray): a point with ``f(w) < 0``.
        cfg (IntegratorConfig): integration settings; ``convergence_tol``
            doubles as the truncation level of the tables.

    Raises:
        NotInOmega: ``f(w)`` is not componentwise negative.
        NoConvergence: the trajectory does not reach the origin.
        NonmonotoneComponent: some ``omega_i`` increases.
    """
    cfg = cfg or IntegratorConfig()
    w = np.asarray(w, dtype=float)
    flow = np.asarray(field(w), dtype=float)
    if not np.all(flow < 0):
        raise NotInOmega("f(w) = %r is not componentwise negative" % list(flow))

    trajectory = integrate_ode(field, w, cfg)
    if not trajectory.converged:
        raise NoConvergence(
            "the trajectory from w does not reach the origin (status %s, x = %r)"
            % (trajectory.status, list(trajectory.terminal)),
            terminal_state=trajectory.terminal,
        )

    times = np.union1d(trajectory.times, np.linspace(0.0, trajectory.t_final, TABLE_SAMPLES))
    states = trajectory(times)
    cut = cfg.convergence_tol
    components, warnings = [], []
    for i in range(field.dimension):
        omega = states[i]
        scale = 1e-12 * (1.0 + np.max(np.abs(omega)))
        rising = np.flatnonzero(np.diff(omega) > scale)
        if rising.size:
            raise NonmonotoneComponent(
                "x%d increases along the trajectory near t = %r" % (i + 1, times[rising[0]])
            )
        keep = omega >= cut
        keep[0] = True
        t_i, omega_i = times[keep], omega[keep]
        previous = np.minimum.accumulate(np.concatenate([[np.inf], omega_i[:-1]]))
        strict = omega_i < previous
        t_i, omega_i = t_i[strict], omega_i[strict]
        if len(omega_i) < 2:
            raise NonmonotoneComponent("x%d does not decrease above %g" % (i + 1, cut))

        def rate(t, i=i):
            return trajectory.derivative(t)[i]

        component = TabulatedComponent(omega_i[::-1], t_i[::-1], rate)
        components.append(component)
        warnings.append(
            "V_%d is extrapolated linearly below x%d = %g" % (i + 1, i + 1, component.cut)
        )
        slopes = np.abs(component.inverse_time.derivative(omega_i))
        if np.max(slopes) > STEEP_SLOPE:
            warnings.append(
                "T_%d is very steep (|dT/dx| up to %.3g); V_%d may not be differentiable"
                % (i + 1, np.max(slopes), i + 1)
            )

    result = MaxSepLyap(components, box=BoxSet(w), warnings=warnings)
    result.trajectory = trajectory
    return result


def sandwich_bounds(lyap, points=256):
    """Class-K envelopes ``nu1(r) <= V_i(r) <= nu2(r)`` for all ``i``.

    Returns:
        tuple: ``(r, nu1, nu2)`` sampled on ``[0, min_i v_i]``.
    """
    if lyap.box is None:
        raise ValueError("a working box is needed for the envelopes")
    r = np.linspace(0.0, float(np.min(lyap.box.upper)), int(points))
    values = np.array([component(r) for component in lyap.components])
    return r, values.min(axis=0), values.max(axis=0)
