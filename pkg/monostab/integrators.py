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

"""Adaptive ODE and method-of-steps DDE integration.

Both integrators share one Dormand-Prince 5(4) stepper with step control on
the embedded error estimate and a cubic Hermite dense output built from the
stored node derivatives. The DDE right-hand side reads retarded arguments
from the initial history, from the dense output behind the front, or (for
vanishing lags that reach past the front within a step) from the straight
line between the front and the current stage.
"""

from __future__ import absolute_import, division, print_function

import bisect
import csv
import math

import numpy as np

from monostab.errors import (
    HistoryGap,
    NonFiniteState,
    PreconditionViolation,
    StepSizeUnderflow,
)
from monostab.utils import max_norm

# Dormand-Prince 5(4) tableau.
C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
E = np.array(
    [71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40]
)

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 5.0
ERROR_EXPONENT = -1 / 5
# Lags below this stop shrinking the step; the retarded value then comes
# from the stage interpolation inside the step.
LAG_FLOOR = 1e-3


class IntegratorConfig(object):
    """Integration settings.

    Args:
        rtol (float): relative tolerance.
        atol (float): absolute tolerance.
        max_step (float): largest step allowed.
        t_end (float): the horizon ``T_end``.
        convergence_tol (float): ``eta``; the run has converged once
            ``|x|_inf < eta`` over a whole trailing window.
        convergence_window (float): length of that window; ``None`` uses
            ``max(1, tau(T_end))``.
        stall_window (float): the run stops as stalled when the state moved
            less than ``eta`` over this window while ``|x|_inf >= eta``;
            ``None`` disables the check.
        positivity_tol (float): negative components above ``-positivity_tol``
            are clamped to zero.
        min_step (float): smaller steps raise :class:`StepSizeUnderflow`.
        max_steps (int): the run stops after this many accepted steps.
    """

    def __init__(
        self,
        rtol=1e-8,
        atol=1e-10,
        max_step=np.inf,
        t_end=200.0,
        convergence_tol=1e-6,
        convergence_window=None,
        stall_window=10.0,
        positivity_tol=1e-9,
        min_step=1e-12,
        max_steps=200000,
    ):
        if not rtol > 0 or not atol > 0:
            raise ValueError("Malformed integrator configuration: tolerances must be positive.")
        if not t_end > 0:
            raise ValueError("Malformed integrator configuration: t_end must be positive.")
        if not max_step > 0:
            raise ValueError("Malformed integrator configuration: max_step must be positive.")
        if not convergence_tol > 0:
            raise ValueError(
                "Malformed integrator configuration: convergence_tol must be positive."
            )
        self.rtol = float(rtol)
        self.atol = float(atol)
        self.max_step = float(max_step)
        self.t_end = float(t_end)
        self.convergence_tol = float(convergence_tol)
        self.convergence_window = convergence_window
        self.stall_window = stall_window
        self.positivity_tol = float(positivity_tol)
        self.min_step = float(min_step)
        self.max_steps = int(max_steps)

    KEYS = (
        "rtol",
        "atol",
        "max_step",
        "t_end",
        "convergence_tol",
        "convergence_window",
        "stall_window",
        "positivity_tol",
        "min_step",
        "max_steps",
    )

    def as_dict(self):
        return {key: getattr(self, key) for key in self.KEYS}

    def replace(self, **changes):
        values = self.as_dict()
        values.update({key: value for key, value in changes.items() if value is not None})
        return IntegratorConfig(**values)

    @classmethod
    def from_mapping(cls, mapping):
        unknown = set(mapping) - set(cls.KEYS)
        if unknown:
            raise KeyError("Malformed integrator configuration: unknown keys %s." % sorted(unknown))
        return cls(**mapping)


def hermite(t0, t1, x0, x1, d0, d1, t):
    """Cubic Hermite interpolation on ``[t0, t1]``."""
    h = t1 - t0
    theta = (t - t0) / h
    theta2 = theta * theta
    theta3 = theta2 * theta
    h00 = 2 * theta3 - 3 * theta2 + 1
    h10 = theta3 - 2 * theta2 + theta
    h01 = -2 * theta3 + 3 * theta2
    h11 = theta3 - theta2
    return h00 * x0 + h10 * h * d0 + h01 * x1 + h11 * h * d1


def hermite_derivative(t0, t1, x0, x1, d0, d1, t):
    h = t1 - t0
    theta = (t - t0) / h
    theta2 = theta * theta
    g00 = (6 * theta2 - 6 * theta) / h
    g10 = 3 * theta2 - 4 * theta + 1
    g01 = (-6 * theta2 + 6 * theta) / h
    g11 = 3 * theta2 - 2 * theta
    return g00 * x0 + g10 * d0 + g01 * x1 + g11 * d1


class _Recorder(object):
    """Append-only node storage with scalar dense lookups."""

    def __init__(self):
        self.times = []
        self.states = []
        self.derivatives = []

    def append(self, t, x, d):
        self.times.append(t)
        self.states.append(x)
        self.derivatives.append(d)

    @property
    def front(self):
        return self.times[-1]

    def __call__(self, t):
        times = self.times
        if t >= times[-1]:
            return self.states[-1]
        k = bisect.bisect_right(times, t) - 1
        if k < 0:
            k = 0
        if times[k] == t:
            return self.states[k]
        return hermite(
            times[k],
            times[k + 1],
            self.states[k],
            self.states[k + 1],
            self.derivatives[k],
            self.derivatives[k + 1],
            t,
        )


class Trajectory(object):
    """Time-stamped states with a cubic Hermite dense output.

    Attributes:
        times (numpy.ndarray): ``(K,)`` strictly increasing sample times.
        states (numpy.ndarray): ``(K, n)`` states.
        derivatives (numpy.ndarray): ``(K, n)`` right-hand sides at the nodes.
        status (str): ``"converged"``, ``"stalled"``, ``"horizon"`` or
            ``"step_limit"``.
        t_converge (float): start of the trailing window that proved
            convergence, when ``status == "converged"``.
    """

    def __init__(self, times, states, derivatives, status="horizon", t_converge=None, window=None):
        self.times = np.asarray(times, dtype=float)
        self.states = np.atleast_2d(np.asarray(states, dtype=float))
        self.derivatives = np.atleast_2d(np.asarray(derivatives, dtype=float))
        self.status = status
        self.t_converge = t_converge
        self.window = window

    @property
    def dimension(self):
        return self.states.shape[1]

    @property
    def converged(self):
        return self.status == "converged"

    @property
    def stalled(self):
        return self.status == "stalled"

    @property
    def t_final(self):
        return float(self.times[-1])

    @property
    def terminal(self):
        return self.states[-1].copy()

    @property
    def terminal_norm(self):
        return float(max_norm(self.states[-1]))

    def norms(self):
        """Max-norm of every stored state."""
        return max_norm(self.states, axis=1)

    def _locate(self, t):
        k = np.searchsorted(self.times, t, side="right") - 1
        return np.clip(k, 0, len(self.times) - 2)

    def __call__(self, t):
        """Dense output at ``t`` (scalar gives ``(n,)``, array gives ``(n, m)``)."""
        scalar = np.ndim(t) == 0
        t = np.atleast_1d(np.asarray(t, dtype=float))
        if len(self.times) == 1:
            values = np.repeat(self.states[:1], len(t), axis=0)
        else:
            k = self._locate(t)
            values = hermite(
                self.times[k][:, None],
                self.times[k + 1][:, None],
                self.states[k],
                self.states[k + 1],
                self.derivatives[k],
                self.derivatives[k + 1],
                t[:, None],
            )
            exact = np.isin(t, self.times)
            if np.any(exact):
                idx = np.searchsorted(self.times, t[exact])
                values[exact] = self.states[idx]
        values = values.T
        return values[:, 0] if scalar else values

    def derivative(self, t):
        scalar = np.ndim(t) == 0
        t = np.atleast_1d(np.asarray(t, dtype=float))
        if len(self.times) == 1:
            values = np.repeat(self.derivatives[:1], len(t), axis=0)
        else:
            k = self._locate(t)
            values = hermite_derivative(
                self.times[k][:, None],
                self.times[k + 1][:, None],
                self.states[k],
                self.states[k + 1],
                self.derivatives[k],
                self.derivatives[k + 1],
                t[:, None],
            )
        values = values.T
        return values[:, 0] if scalar else values

    def write_csv(self, stream):
        """Write ``t,x1,...,xn`` rows with 17 significant digits."""
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["t"] + ["x%d" % (i + 1) for i in range(self.dimension)])
        for t, x in zip(self.times, self.states):
            writer.writerow(["%.17g" % t] + ["%.17g" % value for value in x])

    def to_csv(self, path):
        with open(path, "w") as stream:
            self.write_csv(stream)


def _rms(values):
    return math.sqrt(float(np.mean(values * values)))


class _Stepper(object):
    """Dormand-Prince 5(4) driver shared by ODE and DDE runs."""

    def __init__(self, cfg, dimension):
        self.cfg = cfg
        self.dimension = dimension
        self.recorder = _Recorder()

    def rhs(self, t, x, t_front, x_front):
        raise NotImplementedError

    def lag_cap(self, t):
        return np.inf

    def convergence_window(self):
        return 1.0

    def stall_window(self, t):
        return self.cfg.stall_window

    def _check_finite(self, t, values, what):
        if not np.all(np.isfinite(values)):
            raise NonFiniteState("non-finite %s at t = %r" % (what, t))

    def _clamp(self, x):
        tol = self.cfg.positivity_tol
        mask = (x < 0) & (x >= -tol)
        if np.any(mask):
            x = x.copy()
            x[mask] = 0.0
            return x, True
        return x, False

    def _initial_step(self, t, x, d):
        cfg = self.cfg
        scale = cfg.atol + cfg.rtol * np.abs(x)
        d0 = _rms(x / scale)
        d1 = _rms(d / scale)
        h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
        h0 = min(h0, cfg.max_step, cfg.t_end - t)
        x1 = x + h0 * d
        d_1 = self.rhs(t + h0, x1, t, x)
        d2 = _rms((d_1 - d) / scale) / h0
        if max(d1, d2) <= 1e-15:
            h1 = max(1e-6, h0 * 1e-3)
        else:
            h1 = (0.01 / max(d1, d2)) ** (1 / 5)
        return min(100 * h0, h1, cfg.max_step)

    def run(self, x0, t0=0.0):
        cfg = self.cfg
        t = float(t0)
        x, _ = self._clamp(np.asarray(x0, dtype=float))
        self._check_finite(t, x, "initial state")
        d = self.rhs(t, x, t, x)
        self._check_finite(t, d, "derivative")
        self.recorder.append(t, x, d)

        window = self.convergence_window()
        eta = cfg.convergence_tol
        below_since = t if max_norm(x) < eta else None
        status = "horizon"
        t_converge = None
        h = self._initial_step(t, x, d)
        steps = 0
        k = [None] * 7

        while t < cfg.t_end:
            if steps >= cfg.max_steps:
                status = "step_limit"
                break
            h = min(h, cfg.max_step, self.lag_cap(t))
            if t + h > cfg.t_end:
                h = cfg.t_end - t
            if h < max(cfg.min_step, 1e-14 * abs(t)):
                raise StepSizeUnderflow("step size %r too small at t = %r" % (h, t))

            k[0] = d
            for i in range(1, 7):
                stage = x + h * sum(a * k[j] for j, a in enumerate(A[i]) if a != 0.0)
                k[i] = self.rhs(t + C[i] * h, stage, t, x)
            x_new = x + h * sum(b * k[j] for j, b in enumerate(B) if b != 0.0)
            d_new = k[6]
            self._check_finite(t + h, x_new, "state")
            self._check_finite(t + h, d_new, "derivative")

            error = h * sum(e * k[j] for j, e in enumerate(E) if e != 0.0)
            scale = cfg.atol + cfg.rtol * np.maximum(np.abs(x), np.abs(x_new))
            error_norm = _rms(error / scale)

            if error_norm > 1.0:
                h *= max(MIN_FACTOR, SAFETY * error_norm ** ERROR_EXPONENT)
                continue

            t_new = t + h if t + h < cfg.t_end else cfg.t_end
            x_new, clamped = self._clamp(x_new)
            if clamped:
                d_new = self.rhs(t_new, x_new, t, x)
            self.recorder.append(t_new, x_new, d_new)
            steps += 1
            factor = MAX_FACTOR if error_norm == 0 else SAFETY * error_norm ** ERROR_EXPONENT
            h *= min(MAX_FACTOR, max(MIN_FACTOR, factor))
            t, x, d = t_new, x_new, d_new

            norm = max_norm(x)
            if norm < eta:
                if below_since is None:
                    below_since = t
                if t - below_since >= window:
                    status = "converged"
                    t_converge = below_since
                    break
            else:
                below_since = None
                stall = self.stall_window(t)
                if stall is not None and t - t0 >= stall:
                    past = self.recorder(t - stall)
                    if max_norm(x - past) < eta:
                        status = "stalled"
                        break

        recorder = self.recorder
        return Trajectory(
            recorder.times,
            recorder.states,
            recorder.derivatives,
            status=status,
            t_converge=t_converge,
            window=window,
        )


class _OdeStepper(_Stepper):
    def __init__(self, field, cfg):
        super(_OdeStepper, self).__init__(cfg, field.dimension)
        self.field = field

    def rhs(self, t, x, t_front, x_front):
        return self.field(x)

    def convergence_window(self):
        if self.cfg.convergence_window is not None:
            return float(self.cfg.convergence_window)
        return 1.0


class _DdeStepper(_Stepper):
    def __init__(self, field, history, cfg):
        super(_DdeStepper, self).__init__(cfg, field.dimension)
        self.field = field
        self.history = history
        self.laws = field.all_laws()

    def _retarded(self, t_ret, s, stage, t_front, x_front):
        if t_ret < 0.0 or (t_ret == 0.0 and t_front > 0.0):
            if t_ret < self.history.start:
                raise HistoryGap(
                    "x(%r) is needed but the history starts at %r" % (t_ret, self.history.start)
                )
            return self.history(t_ret)
        if t_ret < t_front:
            return self.recorder(t_ret)
        if s <= t_front:
            return x_front
        return x_front + (t_ret - t_front) / (s - t_front) * (stage - x_front)

    def rhs(self, s, x, t_front, x_front):
        field = self.field
        if field.is_heterogeneous:
            n = self.dimension
            cache = {}
            result = np.empty(n)
            for i in range(n):
                y = np.empty(n)
                for j in range(n):
                    t_ret = s - field.laws[i][j](s)
                    if t_ret not in cache:
                        cache[t_ret] = self._retarded(t_ret, s, x, t_front, x_front)
                    y[j] = cache[t_ret][j]
                result[i] = field.component(i, x, y)
            return result
        t_ret = s - field.law(s)
        return field(x, self._retarded(t_ret, s, x, t_front, x_front))

    def lag_cap(self, t):
        positive = [lag for lag in (law(t) for law in self.laws) if lag > 0]
        return max(min(positive), LAG_FLOOR) if positive else np.inf

    def convergence_window(self):
        if self.cfg.convergence_window is not None:
            return float(self.cfg.convergence_window)
        return max([1.0] + [float(law(self.cfg.t_end)) for law in self.laws])

    def stall_window(self, t):
        if self.cfg.stall_window is None:
            return None
        return max([self.cfg.stall_window] + [float(law(t)) for law in self.laws])


def _check_initial_state(x0, cfg):
    x0 = np.atleast_1d(np.asarray(x0, dtype=float))
    if np.any(x0 < -cfg.positivity_tol):
        raise PreconditionViolation("the initial state must be nonnegative, got %r" % list(x0))
    return x0


def integrate_ode(field, x0, cfg=None):
    """Integrate ``x' = f(x)`` from ``x0``.

    The run ends at ``cfg.t_end``, once ``|x|_inf < eta`` held over a trailing
    window of length ``max(1, ...)``, or when the state stalled away from the
    origin.

    Args:
        field (VectorField): the right-hand side.
        x0: the initial state, ``>= 0``.
        cfg (IntegratorConfig): integration settings.

    Returns:
        Trajectory: the solution.
    """
    cfg = cfg or IntegratorConfig()
    x0 = _check_initial_state(x0, cfg)
    if x0.shape != (field.dimension,):
        raise PreconditionViolation(
            "the initial state has shape %s, expected (%d,)" % (x0.shape, field.dimension)
        )
    return _OdeStepper(field, cfg).run(x0)


def integrate_dde(field, history, cfg=None):
    """Integrate ``x'(t) = g(x(t), x(t - tau(t)))`` by the method of steps.

    Works for a shared delay law and for heterogeneous per-pair laws. The step
    never exceeds the smallest positive current lag, floored at
    ``LAG_FLOOR`` so a lag that touches zero does not stall the run.

    Args:
        field (DelayField): the right-hand side and its delay law(s).
        history (InitialHistory): ``phi`` on ``[-tau_max, 0]``.
        cfg (IntegratorConfig): integration settings.

    Returns:
        Trajectory: the solution on ``[0, t]``.

    Raises:
        Assumption1Violated: a delay law fails the Assumption-1 check.
        HistoryGap: the history does not reach back to ``-tau_max``.
    """
    cfg = cfg or IntegratorConfig()
    for law in field.all_laws():
        law.check_assumption1()
    history.validate(field.tau_max)
    x0 = _check_initial_state(history(0.0), cfg)
    return _DdeStepper(field, history, cfg).run(x0)
