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

"""Stability certificates for monotone systems and their regions of attraction."""

from __future__ import absolute_import, division, print_function

import numpy as np

from monostab import linear
from monostab.errors import DomainError, PathDomainError, PreconditionViolation
from monostab.integrators import IntegratorConfig, integrate_ode
from monostab.lyapunov import MaxSepLyap
from monostab.model import BoxSet, VectorField
from monostab.monotone import check_kamke
from monostab.reports import FAIL, PASS, Report
from monostab.utils import spawn_generators

CERTIFIED = "CERTIFIED"
REJECTED = "REJECTED"
INCONCLUSIVE = "INCONCLUSIVE"

PATH_POINTS = 2048
PATH_TOL = 1e-12
STRICT_TOL = 1e-12


class CertificateResult(Report):
    """A certificate verdict.

    Attributes:
        box (BoxSet): the region-of-attraction estimate when certified.
        lyap (MaxSepLyap): the Lyapunov function derived from the certificate.
        w (numpy.ndarray): the vector used by ``w``-based certificates.
    """

    passing = (CERTIFIED,)

    def __init__(self, method, status, box=None, lyap=None, w=None, witness=None, metadata=None):
        super(CertificateResult, self).__init__(method, status, witness=witness, metadata=metadata)
        self.box = box
        self.lyap = lyap
        self.w = None if w is None else np.asarray(w, dtype=float)

    @property
    def certified(self):
        return self.status == CERTIFIED

    def items(self):
        result = super(CertificateResult, self).items()
        if self.box is not None:
            result.insert(2, ("box", self.box.upper))
        if self.w is not None:
            result.insert(2, ("w", self.w))
        return result


def certify_path(field, path, grid=PATH_POINTS, tol=PATH_TOL):
    """Check ``f(rho(s)) <= -alpha(s)`` on ``[0, sbar]``.

    On success the result carries the box ``{0 <= x <= rho(sbar)}`` and the
    max-separable function with ``V_i = rho_i^{-1}``.

    Args:
        field (VectorField): the dynamics.
        path (PathCandidate): the candidate; validated first.
        grid (int): number of sampled ``s``.
        tol (float): relative slack, ``tol * (1 + |alpha_i(s)|)``.

    Raises:
        PathValidationFailure: ``rho`` is not a class-K path.
        PathDomainError: ``f``, ``rho`` or ``alpha`` cannot be evaluated.
    """
    path.validate()
    s = np.linspace(0.0, path.sbar, int(grid))
    try:
        rho = path(s)
        alpha = path.margin(s)
        flow = np.asarray(field(rho), dtype=float)
    except DomainError as e:
        raise PathDomainError("the path cannot be evaluated on [0, sbar]: %s" % e)
    if not np.all(np.isfinite(flow)):
        raise PathDomainError("f is not finite along the path")

    metadata = {"points": int(grid), "sbar": path.sbar, "tol": tol}
    excess = flow + alpha - tol * (1.0 + np.abs(alpha))
    if np.any(excess > 0):
        i, k = np.unravel_index(np.argmax(excess), excess.shape)
        witness = {
            "s": float(s[k]),
            "component": int(i) + 1,
            "f": float(flow[i, k]),
            "bound": float(-alpha[i, k]),
        }
        return CertificateResult("path", REJECTED, witness=witness, metadata=metadata)

    return CertificateResult(
        "path",
        CERTIFIED,
        box=BoxSet(path.corner),
        lyap=MaxSepLyap.from_path(path),
        metadata=metadata,
    )


def _check_w(w):
    w = np.atleast_1d(np.asarray(w, dtype=float))
    if not np.all(w > 0):
        raise PreconditionViolation("w must be componentwise positive, got %r" % list(w))
    return w


def certify_by_w(field, w, cfg=None):
    """Certify the box ``[0, w]`` from ``f(w) < 0`` and observed convergence.

    ``f(w) < 0`` alone does not imply stability for nonlinear fields, so a
    run that does not reach the origin is INCONCLUSIVE, never CERTIFIED.

    Raises:
        PreconditionViolation: ``w`` is not positive.
    """
    w = _check_w(w)
    cfg = cfg or IntegratorConfig()
    flow = np.asarray(field(w), dtype=float)
    metadata = {"f(w)": flow, "convergence_tol": cfg.convergence_tol, "t_end": cfg.t_end}
    if not np.all(flow <= -STRICT_TOL):
        i = int(np.argmax(flow))
        witness = {"component": i + 1, "f": float(flow[i])}
        return CertificateResult("w", REJECTED, w=w, witness=witness, metadata=metadata)

    trajectory = integrate_ode(field, w, cfg)
    metadata.update({"run": trajectory.status, "t_final": trajectory.t_final})
    if not trajectory.converged:
        witness = {"terminal_state": trajectory.terminal, "terminal_norm": trajectory.terminal_norm}
        return CertificateResult("w", INCONCLUSIVE, w=w, witness=witness, metadata=metadata)
    metadata["t_converge"] = trajectory.t_converge
    return CertificateResult("w", CERTIFIED, box=BoxSet(w), w=w, metadata=metadata)


def _merit(field, x):
    """``max_i f_i(x) / x_i``; negative exactly when ``f(x) < 0``."""
    flow = np.asarray(field(x), dtype=float)
    return float(np.max(flow / np.maximum(x, 1e-300)))


def _descend(field, x, upper, sweeps=20):
    factors = (0.5, 0.8, 1.25, 2.0)
    best = _merit(field, x)
    for _ in range(sweeps):
        if best < 0:
            break
        improved = False
        for i in range(len(x)):
            for factor in factors:
                trial = x.copy()
                trial[i] = min(trial[i] * factor, upper[i])
                merit = _merit(field, trial)
                if merit < best:
                    x, best, improved = trial, merit, True
        if not improved:
            break
    return x, best


def _stretch(field, direction, upper, iterations=50):
    """Largest ``lambda`` with ``lambda * direction`` in the box and ``f < 0``."""
    lo = 1.0
    hi = float(np.min(upper / direction))
    if _merit(field, hi * direction) < 0:
        return hi * direction
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if _merit(field, mid * direction) < 0:
            lo = mid
        else:
            hi = mid
    return lo * direction


def search_w(field, box, trials=200, seed=None, cfg=None):
    """Search ``box`` for a ``w`` with ``f(w) < 0`` whose trajectory converges.

    Random starting points are improved by coordinate descent on
    ``max_i f_i(x) / x_i``; every hit is stretched along its ray to the
    largest scale still satisfying ``f < 0`` and then confirmed by
    integration, halving the scale while the run does not converge.

    Returns:
        numpy.ndarray: the confirmed ``w`` with the largest ``min_i w_i / v_i``,
            or ``None`` when the budget is exhausted.
    """
    cfg = cfg or IntegratorConfig()
    upper = box.upper
    if not box.is_proper:
        return None
    hits = []
    for rng in spawn_generators(seed, trials):
        start = rng.uniform(0.05, 1.0, size=upper.shape) * upper
        x, merit = _descend(field, start, upper)
        if merit < 0:
            hits.append(_stretch(field, x, upper))
    hits.sort(key=lambda w: -float(np.min(w / upper)))

    for w in hits[:10]:
        for _ in range(8):
            if _merit(field, w) < 0 and integrate_ode(field, w, cfg).converged:
                return w
            w = 0.5 * w
    return None


class PsiTransformedField(VectorField):
    """The field ``h(x) = psi(x, f(x))``, carrying the Kamke verdict of ``h``."""

    def __init__(self, base, psi, kamke=None):
        self.base = base
        self.psi = psi
        self.kamke = kamke
        super(PsiTransformedField, self).__init__(
            base.dimension, lambda x: psi(x, base(x)), smooth=base.smooth
        )


def apply_psi_transform(field, psi, box, y_bound=None, grid=32):
    """Compose ``h(x) = psi(x, f(x))`` after validating ``psi``.

    Args:
        field (VectorField): the field ``f``.
        psi (ScalingPsi): the scaling.
        box (BoxSet): ``psi`` is validated for ``x`` in it and the Kamke
            check of ``h`` runs on it.
        y_bound (float): range of ``y`` for validation; defaults to the
            largest ``|f|`` on the grid of ``box``.

    Raises:
        PsiValidationFailure: ``psi`` violates a scaling condition.
    """
    if y_bound is None:
        y_bound = max(1.0, float(np.max(np.abs(field(box.grid(grid))))))
    psi.validate(box, y_bound=y_bound)
    transformed = PsiTransformedField(field, psi)
    transformed.kamke = check_kamke(transformed, box, grid=grid)
    return transformed


def certify_linear(A, trials=100, seed=None):
    """Certify ``x' = Ax`` through a positive ``w`` with ``Aw < 0``.

    Combines the linear programme, the eigenvalue test, the max-separable
    function ``max_i x_i / w_i`` and the diagonal-scaling test. A
    disagreement between the LP and the eigenvalues is INCONCLUSIVE.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    hurwitz = linear.is_hurwitz(A)
    metadata = {"metzler": linear.is_metzler(A), "hurwitz": hurwitz}
    if not metadata["metzler"]:
        return CertificateResult(
            "linear", REJECTED, witness={"reason": "A is not Metzler"}, metadata=metadata
        )
    w = linear.find_positive_w(A)
    if (w is not None) != hurwitz:
        witness = {"reason": "the LP and the eigenvalues disagree"}
        return CertificateResult("linear", INCONCLUSIVE, w=w, witness=witness, metadata=metadata)
    if w is None:
        witness = {"abscissa": linear.spectral_abscissa(A)}
        return CertificateResult("linear", REJECTED, witness=witness, metadata=metadata)

    metadata["decay_rate"] = linear.decay_rate(A, w)
    metadata["d_stability"] = linear.check_d_stability_linear(A, trials=trials, seed=seed).status
    return CertificateResult(
        "linear",
        CERTIFIED,
        box=BoxSet(w),
        lyap=linear.linear_max_sep_lyap(A, w),
        w=w,
        metadata=metadata,
    )


PSI_COLUMNS = ["trial", "x0", "V_start", "V_end", "terminal_norm", "nonincreasing"]


def check_psi_stability(
    field, psi, lyap, box, trials=10, seed=None, cfg=None, grid=32, tol=1e-9
):
    """Integrate ``x' = psi(x, f(x))`` from random points of a certified box.

    ``lyap`` is the max-separable function certifying ``f`` on ``box``; a
    scaling that preserves stability keeps it nonincreasing along every run.

    Returns:
        Report: ``"psi-stability"``; PASS when ``V`` never increases by more
            than ``tol * (1 + V)`` between nodes and ends below its start.
    """
    cfg = cfg or IntegratorConfig()
    transformed = apply_psi_transform(field, psi, box, grid=grid)
    rows = []
    failed = []
    for trial, rng in enumerate(spawn_generators(seed, trials)):
        x0 = box.sample(rng, 1)[:, 0]
        trajectory = integrate_ode(transformed, x0, cfg)
        values = np.asarray(lyap(trajectory.states.T), dtype=float)
        steps = np.diff(values)
        nonincreasing = bool(np.all(steps <= tol * (1.0 + values[:-1])))
        decreased = values[-1] < values[0] or values[0] == 0.0
        rows.append([trial, x0, values[0], values[-1], trajectory.terminal_norm, nonincreasing])
        if not (nonincreasing and decreased):
            failed.append(trial)
    metadata = {"trials": trials, "t_end": cfg.t_end, "kamke": transformed.kamke.status}
    return Report(
        "psi-stability",
        FAIL if failed else PASS,
        witness={"failed": failed} if failed else None,
        metadata=metadata,
        columns=PSI_COLUMNS,
        rows=rows,
    )
