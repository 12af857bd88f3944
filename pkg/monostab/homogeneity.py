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

"""Homogeneous and sub-homogeneous fields.

A field is homogeneous of degree ``p`` with respect to the dilation
``delta_lambda(x) = (lambda^r_1 x_1, ..., lambda^r_n x_n)`` when
``f(delta_lambda(x)) = lambda^p delta_lambda(f(x))``. Such a field with
``f(w) < 0`` is certified on every box by the path
``rho_i(s) = s^(r_i / r_max) w_i``.

Positive systems ``x' = h(x) + d(y)`` that are not monotone are handled
through the comparison field ``gbar``, the smallest monotone field above
``h + d``.
"""

from __future__ import absolute_import, division, print_function

import csv

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from monostab.certificates import CERTIFIED, REJECTED, CertificateResult, certify_by_w, search_w
from monostab.errors import Assumption3Violated, CertificationFailed, NegativityFailed
from monostab.integrators import IntegratorConfig, integrate_dde
from monostab.model import BoxSet, DelayField, InitialHistory, PathCandidate
from monostab.monotone import order_violation
from monostab.reports import FAIL, PASS, Report
from monostab.utils import make_generator, spawn_generators

HOMOGENEITY_TOL = 1e-9
SUB_HOMOGENEITY_TOL = 1e-9
SIGN_TOL = 1e-12
DOMINATION_TOL = 1e-6
POSITIVITY_TOL = 1e-9
GRID = 32
NON_MONOTONE_COLUMNS = [
    "law_id",
    "converged",
    "t_converge",
    "min_state",
    "dominated",
    "terminal_norm",
]


class Dilation(object):
    """The weights ``r`` and degree ``p`` of a diagonal dilation.

    Args:
        weights (list(float)): ``r_i > 0``; ``[1, ..., 1]`` is the standard dilation.
        degree (float): ``p >= 0``.
    """

    def __init__(self, weights, degree=0.0):
        self.weights = np.atleast_1d(np.asarray(weights, dtype=float))
        self.degree = float(degree)
        if not np.all(self.weights > 0):
            raise ValueError(
                "Malformed dilation: weights must be positive, got %r" % list(self.weights)
            )
        if self.degree < 0:
            raise ValueError("Malformed dilation: the degree must be nonnegative, got %r" % degree)

    @property
    def dimension(self):
        return self.weights.shape[0]

    @property
    def r_max(self):
        return float(np.max(self.weights))

    def apply(self, x, lam):
        """``delta_lambda(x)``; ``x`` has shape ``(n,)`` or ``(n, m)`` with ``m`` scales."""
        x = np.asarray(x, dtype=float)
        lam = np.asarray(lam, dtype=float)
        weights = self.weights if x.ndim == 1 else self.weights[:, np.newaxis]
        return np.power(lam, weights) * x

    @classmethod
    def standard(cls, dimension, degree=0.0):
        return cls(np.ones(int(dimension)), degree)

    def __repr__(self):
        return "<Dilation r=%s p=%g>" % (" ".join("%g" % r for r in self.weights), self.degree)


def _homogeneity_residual(field, dilation, degree, points, scales):
    lhs = np.asarray(field(dilation.apply(points, scales)), dtype=float)
    rhs = np.power(scales, degree) * dilation.apply(np.asarray(field(points), dtype=float), scales)
    scale = np.maximum(np.maximum(np.abs(lhs), np.abs(rhs)), 1e-12)
    return np.abs(lhs - rhs) / scale, lhs, rhs


def test_homogeneous(field, dilation, box, trials=200, seed=None, tol=HOMOGENEITY_TOL):
    """Check ``f(delta_lambda(x)) = lambda^p delta_lambda(f(x))`` by sampling.

    ``x`` is uniform in ``box`` and ``lambda`` log-uniform in ``[0.1, 10]``.

    Returns:
        Report: ``"homogeneity"``, with the worst sample on failure.
    """
    rng = make_generator(seed)
    points = box.sample(rng, trials)
    scales = np.exp(rng.uniform(np.log(0.1), np.log(10.0), size=trials))
    residual, lhs, rhs = _homogeneity_residual(field, dilation, dilation.degree, points, scales)
    metadata = {
        "trials": trials,
        "tol": tol,
        "weights": dilation.weights,
        "degree": dilation.degree,
        "max_residual": float(np.max(residual)),
    }
    if np.all(residual <= tol):
        return Report("homogeneity", PASS, metadata=metadata)
    i, k = np.unravel_index(np.argmax(residual), residual.shape)
    witness = {
        "x": points[:, k],
        "lambda": float(scales[k]),
        "component": int(i) + 1,
        "f(delta x)": float(lhs[i, k]),
        "lambda^p delta f(x)": float(rhs[i, k]),
    }
    return Report("homogeneity", FAIL, witness=witness, metadata=metadata)


# Not a pytest test despite the name.
test_homogeneous.__test__ = False


def infer_degree(field, weights, box, degrees=None, trials=200, seed=None):
    """Find the degree in ``degrees`` that best fits the homogeneity identity.

    Args:
        weights (list(float)): the dilation weights ``r``.
        degrees (list(float)): candidates; defaults to ``0, 0.1, ..., 5``.

    Returns:
        tuple: ``(degree, residual)`` with the largest relative residual of
            the best candidate over the shared samples.
    """
    if degrees is None:
        degrees = np.linspace(0.0, 5.0, 51)
    dilation = Dilation(weights)
    rng = make_generator(seed)
    points = box.sample(rng, trials)
    scales = np.exp(rng.uniform(np.log(0.1), np.log(10.0), size=trials))
    best = None
    for degree in degrees:
        residual = float(np.max(_homogeneity_residual(field, dilation, degree, points, scales)[0]))
        if best is None or residual < best[1]:
            best = (float(degree), residual)
    return best


def test_sub_homogeneous(field, degree, box, trials=200, seed=None, tol=SUB_HOMOGENEITY_TOL):
    """Check ``f(lambda x) <= lambda^p f(x)`` for ``lambda`` in ``[1, 10]``.

    The slack is ``tol * (1 + |lambda^p f(x)|)``.

    Returns:
        Report: ``"sub-homogeneity"``, with the worst sample on failure.
    """
    if degree < 0:
        raise ValueError("Malformed degree: expected p >= 0, got %r" % degree)
    rng = make_generator(seed)
    points = box.sample(rng, trials)
    scales = rng.uniform(1.0, 10.0, size=trials)
    lhs = np.asarray(field(scales * points), dtype=float)
    rhs = np.power(scales, degree) * np.asarray(field(points), dtype=float)
    excess = lhs - rhs - tol * (1.0 + np.abs(rhs))
    metadata = {"trials": trials, "tol": tol, "degree": degree}
    if np.all(excess <= 0):
        return Report("sub-homogeneity", PASS, metadata=metadata)
    i, k = np.unravel_index(np.argmax(excess), excess.shape)
    witness = {
        "x": points[:, k],
        "lambda": float(scales[k]),
        "component": int(i) + 1,
        "f(lambda x)": float(lhs[i, k]),
        "lambda^p f(x)": float(rhs[i, k]),
    }
    return Report("sub-homogeneity", FAIL, witness=witness, metadata=metadata)


test_sub_homogeneous.__test__ = False


def homogeneous_path(field, dilation, w, sbar=1.0):
    """The path ``rho_i(s) = s^(r_i / r_max) w_i`` of a homogeneous field.

    Along it ``f(rho(s)) = s^(p / r_max) delta_{s^(1 / r_max)}(f(w))``, so the
    margins are ``alpha_i(s) = -s^((p + r_i) / r_max) f_i(w)``.

    Raises:
        NegativityFailed: ``f(w)`` is not negative.
    """
    w = np.atleast_1d(np.asarray(w, dtype=float))
    if not np.all(w > 0):
        raise NegativityFailed("w must be componentwise positive, got %r" % list(w))
    flow = np.asarray(field(w), dtype=float)
    if not np.all(flow < 0):
        raise NegativityFailed("f(w) = %r is not negative" % list(flow))
    r_max = dilation.r_max
    rho = []
    alpha = []
    for wi, fi, ri in zip(w, flow, dilation.weights):
        rho.append("%r*s^%r" % (float(wi), float(ri / r_max)))
        alpha.append("%r*s^%r" % (float(-fi), float((dilation.degree + ri) / r_max)))
    return PathCandidate(rho, sbar, alpha=alpha)


def _check_sign_conditions(h, d, points):
    n = h.dimension
    values = np.asarray(h(points), dtype=float)
    for i in range(n):
        face = points[i] == 0.0
        bad = np.flatnonzero(face & (values[i] < -SIGN_TOL))
        if bad.size:
            k = int(bad[0])
            raise Assumption3Violated(
                "h_%d(x) = %r is negative on the face x_%d = 0" % (i + 1, values[i, k], i + 1),
                item=1,
                witness=points[:, k],
            )
    values = np.asarray(d(points), dtype=float)
    bad = np.argwhere(values < -SIGN_TOL)
    if bad.size:
        i, k = (int(index) for index in bad[0])
        raise Assumption3Violated(
            "d_%d(x) = %r is negative" % (i + 1, values[i, k]), item=2, witness=points[:, k]
        )


def _running_max(table, axes):
    for axis in axes:
        table = np.maximum.accumulate(table, axis=axis)
    return table


class ComparisonField(DelayField):
    """``gbar(x, y) = H(x) + D(y)`` tabulated on a grid of ``box``.

    ``H_i(x) = sup {h_i(z) : 0 <= z <= x, z_i = x_i}`` and
    ``D_i(y) = sup {d_i(z') : 0 <= z' <= y}`` are running maxima over the
    grid, interpolated multilinearly between nodes.

    Attributes:
        axes (list(numpy.ndarray)): the grid of every coordinate.
        h_table, d_table (numpy.ndarray): ``H`` and ``D``, shape ``(n, k_1, ..., k_n)``.
    """

    def __init__(self, box, axes, h_table, d_table, law=None, laws=None):
        self.box = box
        self.axes = axes
        self.h_table = h_table
        self.d_table = d_table
        n = len(axes)
        self._h = [
            RegularGridInterpolator(axes, h_table[i], bounds_error=False, fill_value=None)
            for i in range(n)
        ]
        self._d = [
            RegularGridInterpolator(axes, d_table[i], bounds_error=False, fill_value=None)
            for i in range(n)
        ]
        super(ComparisonField, self).__init__(
            n, self._evaluate, law=law, laws=laws, smooth=False, check_origin=False
        )

    @staticmethod
    def _lookup(interpolators, x):
        x = np.maximum(x, 0.0)
        flat = x.reshape(x.shape[0], -1).T
        values = np.array([interpolator(flat) for interpolator in interpolators])
        return values.reshape(x.shape)

    def _evaluate(self, x, y):
        x, y = np.broadcast_arrays(x, y)
        return self._lookup(self._h, x) + self._lookup(self._d, y)

    def upper_h(self, x):
        """``H(x)``, the part of ``gbar`` driven by the current state."""
        return self._lookup(self._h, np.asarray(x, dtype=float))

    def upper_d(self, y):
        """``D(y)``, the part of ``gbar`` driven by the delayed state."""
        return self._lookup(self._d, np.asarray(y, dtype=float))

    def with_law(self, law):
        return ComparisonField(self.box, self.axes, self.h_table, self.d_table, law=law)

    def with_laws(self, laws):
        return ComparisonField(self.box, self.axes, self.h_table, self.d_table, laws=laws)

    def write_csv(self, stream):
        n = self.dimension
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(
            ["x%d" % (i + 1) for i in range(n)]
            + ["H%d" % (i + 1) for i in range(n)]
            + ["D%d" % (i + 1) for i in range(n)]
        )
        for index in np.ndindex(*self.h_table.shape[1:]):
            node = [self.axes[j][index[j]] for j in range(n)]
            h_values = [self.h_table[(i,) + index] for i in range(n)]
            d_values = [self.d_table[(i,) + index] for i in range(n)]
            writer.writerow(["%.17g" % value for value in node + h_values + d_values])

    def to_csv(self, path):
        with open(path, "w") as stream:
            self.write_csv(stream)


def comparison_field_bound(h, d, box, grid=GRID, cap=1000000):
    """Tabulate the comparison field ``gbar`` of ``x' = h(x) + d(y)`` on ``box``.

    ``gbar`` is cooperative in ``x``, nondecreasing in ``y`` and dominates
    ``h + d`` at every grid node.

    Args:
        h (VectorField): the undelayed part.
        d (VectorField): the delayed part.
        box (BoxSet): the tabulated region.
        grid (int): nodes per axis.

    Raises:
        Assumption3Violated: ``h_i < 0`` somewhere on the face ``x_i = 0``
            (item 1) or ``d`` has a negative entry (item 2).
    """
    n = h.dimension
    axes = box.axes(grid, cap=cap)
    shape = tuple(len(axis) for axis in axes)
    points = box.grid(grid, cap=cap)
    _check_sign_conditions(h, d, points)

    h_values = np.asarray(h(points), dtype=float).reshape((n,) + shape)
    d_values = np.asarray(d(points), dtype=float).reshape((n,) + shape)
    h_table = np.array(
        [_running_max(h_values[i], [j for j in range(n) if j != i]) for i in range(n)]
    )
    d_table = np.array([_running_max(d_values[i], range(n)) for i in range(n)])
    return ComparisonField(box, axes, h_table, d_table)


def check_dominating_index(gbar):
    """Require some ``i`` with ``H_i(x) + D_i(x) < 0`` at every nonzero grid node.

    Raises:
        Assumption3Violated: item 4 fails; the witness is the grid node.
    """
    n = gbar.dimension
    total = (gbar.h_table + gbar.d_table).reshape(n, -1)
    mesh = np.meshgrid(*gbar.axes, indexing="ij")
    nodes = np.array([axis.ravel() for axis in mesh])
    nonzero = np.any(nodes > 0, axis=0)
    failing = np.flatnonzero(nonzero & np.all(total >= 0, axis=0))
    if failing.size:
        k = int(failing[0])
        raise Assumption3Violated(
            "no component of sup h + sup d is negative at x = %r" % list(nodes[:, k]),
            item=4,
            witness=nodes[:, k],
        )


def certify_non_monotone_positive(
    h, d, degree, box, laws, history=None, cfg=None, grid=GRID, trials=200, seed=None
):
    """Certify ``x' = h(x) + d(x(t - tau(t)))`` through its comparison field.

    The conditions on ``h`` and ``d`` are checked on ``box``, ``gbar`` is
    certified without delay by a ``w`` search, and the original system is
    simulated next to ``gbar`` under every law from ``history`` (the constant
    ``w`` by default).

    Returns:
        CertificateResult: CERTIFIED when every run stays nonnegative, stays
            below the ``gbar`` run and converges; REJECTED with the first
            failing law otherwise. The rows follow ``NON_MONOTONE_COLUMNS``.

    Raises:
        Assumption3Violated: one of the four conditions fails on ``box``.
        CertificationFailed: ``gbar`` could not be certified without delay.
    """
    cfg = cfg or IntegratorConfig()
    gbar = comparison_field_bound(h, d, box, grid=grid)
    for item_field, label in ((h, "h"), (d, "d")):
        report = test_sub_homogeneous(item_field, degree, box, seed=seed)
        if not report.passed:
            raise Assumption3Violated(
                "%s is not sub-homogeneous of degree %g" % (label, degree),
                item=3,
                witness=report.witness.get("x"),
            )
    check_dominating_index(gbar)

    induced = gbar.induced()
    w = search_w(induced, box, trials=trials, seed=seed, cfg=cfg)
    if w is None:
        raise CertificationFailed("no w with gbar(w, w) < 0 and a converging run was found")
    certificate = certify_by_w(induced, w, cfg=cfg)
    if not certificate.certified:
        raise CertificationFailed("gbar is %s from w = %r" % (certificate.status, list(w)))

    history = history or InitialHistory.constant(w)
    rows = []
    failed = []
    for law in laws:
        law.check_assumption1()
        run_cfg = cfg.replace(t_end=law.horizon(cfg.t_end))
        lower = integrate_dde(DelayField.from_parts(h, d, law=law), history, run_cfg)
        upper = integrate_dde(gbar.with_law(law), history, run_cfg)
        min_state = float(lower.states.min())
        dominated = order_violation(lower, upper, tol=DOMINATION_TOL) is None
        rows.append(
            [
                law.label,
                lower.converged,
                lower.t_converge,
                min_state,
                dominated,
                lower.terminal_norm,
            ]
        )
        if not (lower.converged and dominated and min_state >= -POSITIVITY_TOL):
            failed.append(law.label)

    metadata = {"degree": degree, "grid": len(gbar.axes[0]), "laws": len(rows)}
    result = CertificateResult(
        "non-monotone",
        REJECTED if failed else CERTIFIED,
        box=BoxSet(w),
        w=w,
        witness={"failed": failed} if failed else None,
        metadata=metadata,
    )
    result.columns = list(NON_MONOTONE_COLUMNS)
    result.rows = rows
    result.gbar = gbar
    return result


def scan_global_sub_homogeneous(
    field, scales=(1.0, 10.0, 100.0), growth=4.0, trials=50, seed=None, cfg=None
):
    """Look for ever larger ``w >= scale * 1`` with a converging run.

    For each scale the search box is ``[0, growth * scale]``. A sub-homogeneous
    field that is globally stable has such a ``w`` at every scale; finding
    one is evidence, not proof, and a miss is reported as FAIL.

    Returns:
        Report: ``"global-scan"`` with one row per scale.
    """
    cfg = cfg or IntegratorConfig()
    n = field.dimension
    rows = []
    missed = []
    for scale, rng_seed in zip(scales, spawn_generators(seed, len(scales))):
        box = BoxSet(np.full(n, growth * float(scale)))
        w = search_w(field, box, trials=trials, seed=int(rng_seed.integers(2**31)), cfg=cfg)
        found = w is not None and bool(np.all(w >= scale))
        rows.append([float(scale), found, None if w is None else float(np.min(w))])
        if not found:
            missed.append(float(scale))
    return Report(
        "global-scan",
        FAIL if missed else PASS,
        witness={"missed": missed} if missed else None,
        metadata={"growth": growth, "trials": trials},
        columns=["scale", "found", "w_min"],
        rows=rows,
    )
