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

"""Delay-independent stability of monotone delay systems.

A box certified for the delay-free field ``f(x) = g(x, x)`` by a Lyapunov
function (T1), a path (T2) or a vector ``w`` (T3) is invariant and attracted
to the origin for every delay law with ``t - tau(t) -> +inf``. The functions
below extract such boxes and exercise the claim by simulation.
"""

from __future__ import absolute_import, division, print_function

import numpy as np

from monostab.certificates import certify_path
from monostab.errors import (
    Assumption1Violated,
    ConditionFailed,
    PreconditionViolation,
    UncertifiedLyapunov,
    UncertifiedPath,
)
from monostab.integrators import IntegratorConfig, integrate_dde, integrate_ode
from monostab.lyapunov import verify_decrease
from monostab.model import BoxSet, InitialHistory
from monostab.reports import FAIL, PASS, PRECONDITION, Report

INVARIANCE_TOL = 1e-6
STRICT_TOL = 1e-12
SWEEP_COLUMNS = ["law_id", "converged", "t_converge", "max_excursion", "terminal_norm"]


def roa_under_delay_t1(field, lyap, report=None):
    """The box ``{0 <= x_i <= V_i^{-1}(c)}`` with ``c = min_i V_i(v_i)``.

    Args:
        field (DelayField): the delay system.
        lyap (MaxSepLyap): a max-separable function on the box ``v``.
        report (DecreaseReport): a decrease verdict for ``lyap`` along the
            induced field; computed when omitted.

    Raises:
        UncertifiedLyapunov: ``V`` does not decrease along ``g(x, x)``.
    """
    if lyap.box is None:
        raise UncertifiedLyapunov("V has no working box")
    if report is None:
        report = verify_decrease(lyap, field.induced(), lyap.box)
    if not report.passed:
        raise UncertifiedLyapunov(
            "V does not decrease along g(x, x) at %r" % list(report.witness.get("point", []))
        )
    level = float(np.min(lyap.component_values(lyap.box.upper)))
    return lyap.level_box(level)


def roa_under_delay_t2(field, path, result=None):
    """The box ``{0 <= x <= rho(sbar)}`` of a path certified for ``g(x, x)``.

    Raises:
        UncertifiedPath: the path does not certify the induced field.
    """
    if result is None:
        result = certify_path(field.induced(), path)
    if not result.certified:
        raise UncertifiedPath("the path is %s for g(x, x): %r" % (result.status, result.witness))
    return BoxSet(path.corner)


def roa_under_delay_t3(field, w, cfg=None):
    """The box ``[0, w]`` when ``g(w, w) < 0`` and ``x(t, w)`` converges without delay.

    Raises:
        PreconditionViolation: ``w`` is not positive.
        ConditionFailed: ``g(w, w)`` is not negative, or the delay-free run
            from ``w`` does not reach the origin.
    """
    w = np.atleast_1d(np.asarray(w, dtype=float))
    if not np.all(w > 0):
        raise PreconditionViolation("w must be componentwise positive, got %r" % list(w))
    flow = np.asarray(field(w, w), dtype=float)
    positive = np.flatnonzero(flow > -STRICT_TOL)
    if positive.size:
        i = int(positive[0])
        raise ConditionFailed("g(w, w)_%d = %r is not negative" % (i + 1, flow[i]), component=i + 1)
    trajectory = integrate_ode(field.induced(), w, cfg or IntegratorConfig())
    if not trajectory.converged:
        raise ConditionFailed(
            "x(t, w) does not converge without delay (status %s, x = %r)"
            % (trajectory.status, list(trajectory.terminal))
        )
    return BoxSet(w)


def horizon_config(field, cfg):
    """``cfg`` with ``t_end`` stretched for slowly forgetting delay laws."""
    t_end = max([law.horizon(cfg.t_end) for law in field.all_laws()] + [cfg.t_end])
    return cfg.replace(t_end=t_end)


def _history_in_box(history, box, tau_max, points=256):
    times = np.linspace(-tau_max, 0.0, points) if tau_max > 0 else np.zeros(1)
    for t in times:
        value = history(t)
        if np.any(value < 0) or np.any(value > box.upper + STRICT_TOL):
            return float(t)
    return None


def _excursion(trajectory, box):
    times = trajectory.times
    if len(times) > 1:
        times = np.union1d(times, 0.5 * (times[1:] + times[:-1]))
    return float(np.max(trajectory(times) - box.upper[:, np.newaxis]))


def verify_box_invariance(field, box, history, cfg=None, tol=INVARIANCE_TOL):
    """Simulate the delay system and check ``x(t) <= v + tol`` throughout.

    Returns:
        Report: PASS when the trajectory stays in the box; the metadata
            carry the largest excursion, the run status and the terminal norm.
            PRECONDITION when ``phi`` leaves the box or ``g(v, v)`` is not
            negative.
    """
    cfg = horizon_config(field, cfg or IntegratorConfig())
    for law in field.all_laws():
        law.check_assumption1()
    metadata = {"box": box.upper, "tol": tol, "t_end": cfg.t_end}
    corner = np.asarray(field(box.upper, box.upper), dtype=float)
    if not np.all(corner < 0):
        witness = {"reason": "g(v, v) is not negative", "g(v, v)": corner}
        return Report("invariance", PRECONDITION, witness=witness, metadata=metadata)
    outside = _history_in_box(history, box, field.tau_max)
    if outside is not None:
        witness = {"reason": "phi leaves the box", "t": outside}
        return Report("invariance", PRECONDITION, witness=witness, metadata=metadata)

    trajectory = integrate_dde(field, history, cfg)
    excursion = _excursion(trajectory, box)
    metadata.update(
        {
            "max_excursion": excursion,
            "run": trajectory.status,
            "converged": trajectory.converged,
            "t_converge": trajectory.t_converge,
            "terminal_norm": trajectory.terminal_norm,
        }
    )
    report = Report("invariance", PASS if excursion <= tol else FAIL, metadata=metadata)
    report.trajectory = trajectory
    return report


def sweep_delay_laws(field, box, laws, history=None, cfg=None, tol=INVARIANCE_TOL):
    """Run :func:`verify_box_invariance` under every law in ``laws``.

    ``history`` defaults to the constant corner of ``box``, which dominates
    every other history in the box. A law failing the Assumption-1 check is
    tabulated as not converged.

    Returns:
        Report: PASS when every law keeps the box invariant and converges;
            the rows follow ``SWEEP_COLUMNS`` in the order of ``laws``.
    """
    cfg = cfg or IntegratorConfig()
    history = history or InitialHistory.constant(box.upper)
    rows = []
    failed = []
    for law in laws:
        try:
            report = verify_box_invariance(field.with_law(law), box, history, cfg=cfg, tol=tol)
        except Assumption1Violated:
            rows.append([law.label, False, None, None, None])
            failed.append(law.label)
            continue
        metadata = report.metadata
        converged = bool(metadata.get("converged", False))
        rows.append(
            [
                law.label,
                converged,
                metadata.get("t_converge"),
                metadata.get("max_excursion"),
                metadata.get("terminal_norm"),
            ]
        )
        if not (report.passed and converged):
            failed.append(law.label)

    witness = {"failed": failed} if failed else None
    return Report(
        "sweep",
        FAIL if failed else PASS,
        witness=witness,
        metadata={"laws": len(rows), "box": box.upper},
        columns=SWEEP_COLUMNS,
        rows=rows,
    )


def heterogeneous_delay_sim(field, laws, history, cfg=None):
    """Integrate ``x_i' = g_i(x(t), (x_j(t - tau_i^j(t)))_j)``.

    Args:
        field (DelayField): provides ``g``; its own delay is ignored.
        laws (list(list(DelayLaw))): ``laws[i][j]`` delays ``x_j`` in ``g_i``.
        history (InitialHistory): ``phi``.

    Raises:
        Assumption1Violated: some ``tau_i^j`` fails the Assumption-1 check.
    """
    for row in laws:
        for law in row:
            law.check_assumption1()
    heterogeneous = field.with_laws(laws)
    cfg = horizon_config(heterogeneous, cfg or IntegratorConfig())
    return integrate_dde(heterogeneous, history, cfg)
