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

"""Evaluable dynamical systems, boxes, paths, scalings and delay laws."""

from __future__ import absolute_import, division, print_function

import numpy as np

from monostab import validators
from monostab.errors import (
    DimensionMismatch,
    DomainError,
    OriginNotEquilibrium,
)
from monostab.expr import (
    ExprSystem,
    contains_non_smooth,
    differentiate,
    parse,
    state_env,
)
from monostab.utils import max_norm

ORIGIN_TOLERANCE = 1e-12


def _broadcast_rows(values, shape):
    return np.array([np.broadcast_to(np.asarray(value, dtype=float), shape) for value in values])


class ScalarFunction(object):
    """A real function of one variable given as an expression or a callable.

    Args:
        source: an :class:`~monostab.expr.Expr`, a source string or a callable.
        var (str): the variable name used by the expression.
    """

    def __init__(self, source, var="s"):
        self.var = var
        self.expr = None
        self._derivative = None
        if isinstance(source, str):
            source = parse(source)
        if callable(source):
            self._func = source
        else:
            self.expr = source
            if not contains_non_smooth(source):
                self._derivative = differentiate(source, var)

    def __call__(self, value):
        if self.expr is None:
            return self._func(value)
        result = self.expr.evaluate({self.var: value})
        if isinstance(value, np.ndarray):
            return np.broadcast_to(np.asarray(result, dtype=float), value.shape)
        return result

    def derivative(self, value, h=1e-6):
        if self._derivative is not None:
            result = self._derivative.evaluate({self.var: value})
            if isinstance(value, np.ndarray):
                return np.broadcast_to(np.asarray(result, dtype=float), value.shape)
            return result
        return (self(value + h) - self(value - h)) / (2 * h)

    def __str__(self):
        return str(self.expr) if self.expr is not None else repr(self._func)


class VectorField(object):
    """An evaluable map ``f: R^n_+ -> R^n`` with ``f(0) = 0``.

    Calling the field with an array of shape ``(n,)`` returns ``(n,)``; with
    ``(n, m)`` (``m`` points) it returns ``(n, m)``.

    Args:
        dimension (int): the state dimension.
        func (callable): ``x -> f(x)``.
        jacobian (callable): optional ``x -> J(x)`` of shape ``(n, n[, m])``.
        system (ExprSystem): the expressions the field was built from.
        smooth (bool): whether an analytic Jacobian is meaningful.
    """

    def __init__(self, dimension, func, jacobian=None, system=None, smooth=True, check_origin=True):
        self.dimension = int(dimension)
        self._func = func
        self._jacobian = jacobian
        self.system = system
        self.smooth = smooth
        if check_origin:
            _check_origin(self, np.zeros(self.dimension))

    def __call__(self, x):
        return self._func(np.asarray(x, dtype=float))

    @property
    def has_jacobian(self):
        return self._jacobian is not None

    def jacobian(self, x, h=1e-6):
        """Return the Jacobian at ``x``, analytic when available."""
        x = np.asarray(x, dtype=float)
        if self._jacobian is not None:
            return self._jacobian(x)
        return finite_difference_jacobian(self, x, h=h)

    @classmethod
    def from_system(cls, system):
        if system.is_delayed:
            raise DimensionMismatch("a state field cannot use delayed variables y1..yn")
        components = system.components
        n = system.dimension

        def func(x):
            env = state_env(x)
            return _broadcast_rows([c.evaluate(env) for c in components], x.shape[1:])

        smooth = not any(contains_non_smooth(c) for c in components)
        jacobian = None
        if smooth:
            entries = [[differentiate(c, "x%d" % (j + 1)) for j in range(n)] for c in components]
            jacobian = _expression_jacobian(entries)
        return cls(n, func, jacobian=jacobian, system=system, smooth=smooth)

    @classmethod
    def from_delayed_part(cls, system):
        """The field ``y -> d(y)`` of a delayed system written over ``y1..yn`` only."""
        components = system.components
        n = system.dimension

        def func(y):
            env = state_env(y, prefix="y")
            return _broadcast_rows([c.evaluate(env) for c in components], y.shape[1:])

        smooth = not any(contains_non_smooth(c) for c in components)
        jacobian = None
        if smooth:
            entries = [[differentiate(c, "y%d" % (j + 1)) for j in range(n)] for c in components]
            jacobian = _expression_jacobian(entries, prefix="y")
        return cls(n, func, jacobian=jacobian, system=system, smooth=smooth)

    @classmethod
    def linear(cls, A):
        """The field ``f(x) = Ax``."""
        A = np.atleast_2d(np.asarray(A, dtype=float))
        if A.shape[0] != A.shape[1]:
            raise DimensionMismatch("A must be square, got shape %s" % (A.shape,))

        def jacobian(x):
            if x.ndim == 1:
                return A.copy()
            return np.repeat(A[:, :, np.newaxis], x.shape[1], axis=2)

        return cls(A.shape[0], lambda x: np.tensordot(A, x, axes=1), jacobian=jacobian)


def _expression_jacobian(entries, prefix="x"):
    def jacobian(x):
        env = state_env(x, prefix=prefix)
        rows = [[entry.evaluate(env) for entry in row] for row in entries]
        return np.array([_broadcast_rows(row, x.shape[1:]) for row in rows])

    return jacobian


def finite_difference_jacobian(field, x, h=1e-6):
    """Central-difference Jacobian of ``field`` at ``x`` (one or many points)."""
    n = field.dimension
    columns = []
    for j in range(n):
        step = np.zeros_like(x)
        step[j] = h
        columns.append((field(x + step) - field(x - step)) / (2 * h))
    return np.stack(columns, axis=1)


def _check_origin(field, origin, *args):
    try:
        value = field(origin, *args)
    except DomainError as e:
        raise OriginNotEquilibrium("the field is not defined at the origin: %s" % e)
    if np.shape(value) != (field.dimension,):
        raise DimensionMismatch(
            "the field returns shape %s, expected (%d,)" % (np.shape(value), field.dimension)
        )
    if max_norm(value) > ORIGIN_TOLERANCE:
        raise OriginNotEquilibrium("the origin is not an equilibrium: f(0) = %r" % list(value))


def build_vector_field(system):
    """Bind an :class:`~monostab.expr.ExprSystem` into a :class:`VectorField`."""
    if not isinstance(system, ExprSystem):
        raise TypeError("expected an ExprSystem")
    return VectorField.from_system(system)


class DelayLaw(object):
    """A time-varying delay ``tau(t)``.

    Kinds are ``constant`` (``c``), ``sinusoidal`` (``a + b*sin(omega*t)``
    with ``a >= b >= 0``), ``proportional`` (``gamma*t``) and ``expression``
    (any expression in ``t``).
    """

    KINDS = ("constant", "sinusoidal", "proportional", "expression")

    def __init__(self, kind, params=None, expr=None, label=None):
        if kind not in self.KINDS:
            raise NotImplementedError(kind)
        self.kind = kind
        self.params = dict(params or {})
        self.expr = expr
        self.label = label or self._default_label()
        self._tau_max = None
        self._checked = False

    def _default_label(self):
        if self.kind == "constant":
            return "const:%r" % self.params["c"]
        if self.kind == "sinusoidal":
            return "sin:%r,%r,%r" % (self.params["a"], self.params["b"], self.params["omega"])
        if self.kind == "proportional":
            return "prop:%r" % self.params["gamma"]
        return "expr:%s" % self.expr

    @classmethod
    def constant(cls, c):
        return cls("constant", {"c": float(c)})

    @classmethod
    def sinusoidal(cls, a, b, omega=1.0):
        return cls("sinusoidal", {"a": float(a), "b": float(b), "omega": float(omega)})

    @classmethod
    def proportional(cls, gamma):
        return cls("proportional", {"gamma": float(gamma)})

    @classmethod
    def from_expression(cls, source):
        expr = parse(source) if isinstance(source, str) else source
        return cls("expression", expr=expr)

    @classmethod
    def parse(cls, text):
        """Parse the law mini-syntax: ``zero``, ``const:c``, ``sin:a,b[,omega]``,
        ``prop:gamma`` or ``expr:<expression in t>``."""
        text = text.strip()
        if text == "zero":
            return cls.constant(0.0)
        kind, sep, rest = text.partition(":")
        if not sep:
            raise ValueError("Malformed delay law %r" % text)
        try:
            if kind == "const":
                return cls.constant(float(rest))
            if kind == "sin":
                return cls.sinusoidal(*[float(part) for part in rest.split(",")])
            if kind == "prop":
                return cls.proportional(float(rest))
        except (TypeError, ValueError):
            raise ValueError("Malformed delay law %r" % text)
        if kind == "expr":
            return cls.from_expression(rest)
        raise ValueError("Malformed delay law %r: unknown kind %r" % (text, kind))

    def __call__(self, t):
        p = self.params
        if self.kind == "constant":
            return p["c"] + 0.0 * np.asarray(t) if isinstance(t, np.ndarray) else p["c"]
        if self.kind == "sinusoidal":
            return p["a"] + p["b"] * np.sin(p["omega"] * t)
        if self.kind == "proportional":
            return p["gamma"] * t
        value = self.expr.evaluate({"t": t})
        if isinstance(t, np.ndarray):
            return np.broadcast_to(np.asarray(value, dtype=float), t.shape)
        return value

    def check_assumption1(self, horizon=1e4, samples=100000):
        """Check ``t - tau(t) -> +inf`` on a sampled horizon.

        Raises:
            Assumption1Violated: the delay is negative somewhere or the lower
                envelope of ``t - tau(t)`` does not grow.
        """
        if not self._checked:
            self._tau_max = validators.check_assumption1(self, horizon=horizon, samples=samples)
            self._checked = True
        return self

    @property
    def tau_max(self):
        """``-inf_{t >= 0} (t - tau(t))``, computed on the check horizon."""
        if not self._checked:
            self.check_assumption1()
        return self._tau_max

    def horizon(self, t_end):
        """Stretch ``t_end`` by ``0.1 / (1 - gamma)`` for proportional delays, ``gamma >= 0.9``."""
        if self.kind == "proportional" and 0.9 <= self.params["gamma"] < 1.0:
            return t_end * 0.1 / (1.0 - self.params["gamma"])
        return t_end

    @property
    def is_zero(self):
        return self.kind == "constant" and self.params["c"] == 0.0

    def __repr__(self):
        return "<DelayLaw %s>" % self.label


class DelayField(object):
    """An evaluable ``g(x, y)`` for ``x'(t) = g(x(t), x(t - tau(t)))``.

    Args:
        dimension (int): the state dimension.
        func (callable): ``(x, y) -> g(x, y)``.
        law (DelayLaw): the shared delay, or ``None`` when ``laws`` is given.
        laws (list(list(DelayLaw))): heterogeneous delays; ``laws[i][j]`` is
            the delay of ``x_j`` as seen by component ``i``.
        jacobian_x, jacobian_y (callable): optional analytic Jacobians.
        system (ExprSystem): the expressions the field was built from.
    """

    def __init__(
        self,
        dimension,
        func,
        law=None,
        laws=None,
        jacobian_x=None,
        jacobian_y=None,
        system=None,
        smooth=True,
        check_origin=True,
    ):
        self.dimension = int(dimension)
        self._func = func
        self._jacobian_x = jacobian_x
        self._jacobian_y = jacobian_y
        self.system = system
        self.smooth = smooth
        if laws is not None:
            laws = [list(row) for row in laws]
            if len(laws) != self.dimension or any(len(row) != self.dimension for row in laws):
                raise DimensionMismatch("heterogeneous delays must form an n x n table")
        self.law = law
        self.laws = laws
        if check_origin:
            zero = np.zeros(self.dimension)
            try:
                value = self(zero, zero)
            except DomainError as e:
                raise OriginNotEquilibrium("g is not defined at the origin: %s" % e)
            if max_norm(value) > ORIGIN_TOLERANCE:
                raise OriginNotEquilibrium("g(0, 0) = %r is not zero" % list(value))

    def __call__(self, x, y):
        return self._func(np.asarray(x, dtype=float), np.asarray(y, dtype=float))

    @property
    def is_heterogeneous(self):
        return self.laws is not None

    def component(self, i, x, y):
        if self.system is not None:
            env = state_env(x)
            env.update(state_env(y, prefix="y"))
            return self.system.components[i].evaluate(env)
        return self(x, y)[i]

    def induced(self):
        """The delay-free field ``f(x) = g(x, x)``."""
        jacobian = None
        if self._jacobian_x is not None and self._jacobian_y is not None:

            def jacobian(x):
                return self._jacobian_x(x, x) + self._jacobian_y(x, x)

        return VectorField(
            self.dimension,
            lambda x: self._func(x, x),
            jacobian=jacobian,
            smooth=self.smooth,
            check_origin=False,
        )

    def with_law(self, law):
        """The same ``g`` under another shared delay law."""
        return DelayField(
            self.dimension,
            self._func,
            law=law,
            jacobian_x=self._jacobian_x,
            jacobian_y=self._jacobian_y,
            system=self.system,
            smooth=self.smooth,
            check_origin=False,
        )

    def with_laws(self, laws):
        """The same ``g`` under heterogeneous delays."""
        return DelayField(
            self.dimension,
            self._func,
            laws=laws,
            jacobian_x=self._jacobian_x,
            jacobian_y=self._jacobian_y,
            system=self.system,
            smooth=self.smooth,
            check_origin=False,
        )

    def all_laws(self):
        if self.laws is not None:
            return [law for row in self.laws for law in row]
        return [self.law] if self.law is not None else []

    @property
    def tau_max(self):
        laws = self.all_laws()
        return max([law.tau_max for law in laws]) if laws else 0.0

    def jacobians(self, x, y, h=1e-6):
        """Return ``(dg/dx, dg/dy)`` at ``(x, y)``."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if self._jacobian_x is not None and self._jacobian_y is not None:
            return self._jacobian_x(x, y), self._jacobian_y(x, y)
        n = self.dimension
        jx, jy = [], []
        for j in range(n):
            step = np.zeros_like(x)
            step[j] = h
            jx.append((self(x + step, y) - self(x - step, y)) / (2 * h))
            jy.append((self(x, y + step) - self(x, y - step)) / (2 * h))
        return np.stack(jx, axis=1), np.stack(jy, axis=1)

    @property
    def has_jacobian(self):
        return self._jacobian_x is not None

    @classmethod
    def from_system(cls, system, law=None, laws=None):
        if not system.is_delayed:
            raise DimensionMismatch("a delay field needs a system with role 'delayed'")
        components = system.components
        n = system.dimension

        def func(x, y):
            env = state_env(x)
            env.update(state_env(y, prefix="y"))
            shape = np.broadcast(x, y).shape[1:]
            return _broadcast_rows([c.evaluate(env) for c in components], shape)

        smooth = not any(contains_non_smooth(c) for c in components)
        jacobian_x = jacobian_y = None
        if smooth:
            jacobian_x = _expression_jacobian_xy(components, "x", n)
            jacobian_y = _expression_jacobian_xy(components, "y", n)
        return cls(
            n,
            func,
            law=law,
            laws=laws,
            jacobian_x=jacobian_x,
            jacobian_y=jacobian_y,
            system=system,
            smooth=smooth,
        )

    @classmethod
    def from_parts(cls, h, d, law=None, laws=None):
        """The field ``g(x, y) = h(x) + d(y)`` of two :class:`VectorField`."""
        if h.dimension != d.dimension:
            raise DimensionMismatch("h and d must have the same dimension")
        jacobian_x = jacobian_y = None
        if h.has_jacobian and d.has_jacobian:

            def jacobian_x(x, y):
                return h.jacobian(np.broadcast_arrays(x, y)[0])

            def jacobian_y(x, y):
                return d.jacobian(np.broadcast_arrays(x, y)[1])

        return cls(
            h.dimension,
            lambda x, y: h(x) + d(y),
            law=law,
            laws=laws,
            jacobian_x=jacobian_x,
            jacobian_y=jacobian_y,
            smooth=h.smooth and d.smooth,
        )

    @classmethod
    def linear(cls, A, B, law=None, laws=None):
        """The field ``g(x, y) = Ax + By``."""
        A = np.atleast_2d(np.asarray(A, dtype=float))
        B = np.atleast_2d(np.asarray(B, dtype=float))
        if A.shape != B.shape or A.shape[0] != A.shape[1]:
            raise DimensionMismatch("A and B must be square of the same size")

        def func(x, y):
            return np.tensordot(A, x, axes=1) + np.tensordot(B, y, axes=1)

        return cls(
            A.shape[0],
            func,
            law=law,
            laws=laws,
            jacobian_x=_constant_jacobian(A),
            jacobian_y=_constant_jacobian(B),
        )


def _constant_jacobian(M):
    def jacobian(x, y):
        shape = np.broadcast(x, y).shape[1:]
        if not shape:
            return M.copy()
        return np.broadcast_to(M.reshape(M.shape + (1,) * len(shape)), M.shape + shape).copy()

    return jacobian


def _expression_jacobian_xy(components, prefix, n):
    entries = [[differentiate(c, "%s%d" % (prefix, j + 1)) for j in range(n)] for c in components]

    def jacobian(x, y):
        env = state_env(x)
        env.update(state_env(y, prefix="y"))
        shape = np.broadcast(x, y).shape[1:]
        return np.array([_broadcast_rows([e.evaluate(env) for e in row], shape) for row in entries])

    return jacobian


def build_delay_field(system, law):
    """Bind a delayed :class:`~monostab.expr.ExprSystem` and its delay.

    Args:
        system (ExprSystem): expressions over ``x1..xn`` and ``y1..yn``.
        law: a :class:`DelayLaw` or an ``n x n`` table of them.

    Raises:
        Assumption1Violated: a delay fails the Assumption-1 check.
        OriginNotEquilibrium: ``g(0, 0) != 0``.
    """
    if isinstance(law, DelayLaw):
        law.check_assumption1()
        return DelayField.from_system(system, law=law)
    for row in law:
        for entry in row:
            entry.check_assumption1()
    return DelayField.from_system(system, laws=law)


class BoxSet(object):
    """The box ``{x : 0 <= x <= v}``."""

    def __init__(self, upper):
        self.upper = np.atleast_1d(np.asarray(upper, dtype=float))
        if np.any(self.upper < 0):
            raise ValueError("the upper corner must be nonnegative, got %r" % list(self.upper))

    @property
    def dimension(self):
        return self.upper.shape[0]

    @property
    def is_proper(self):
        return bool(np.all(self.upper > 0))

    def contains(self, x, tol=0.0):
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= -tol) and np.all(x <= self.upper + tol))

    def axes(self, points, cap=1000000):
        """Per-axis sample points, shrinking ``points`` so the grid stays under ``cap``."""
        n = self.dimension
        points = max(2, int(points))
        while points > 2 and points ** n > cap:
            points -= 1
        return [np.linspace(0.0, bound, points) for bound in self.upper]

    def grid(self, points, cap=1000000):
        """All grid points, shape ``(n, m)``."""
        mesh = np.meshgrid(*self.axes(points, cap=cap), indexing="ij")
        return np.array([axis.ravel() for axis in mesh])

    def sample(self, rng, count):
        """``count`` uniform random points, shape ``(n, count)``."""
        return rng.uniform(0.0, 1.0, size=(self.dimension, count)) * self.upper[:, np.newaxis]

    def __eq__(self, other):
        return isinstance(other, BoxSet) and np.array_equal(self.upper, other.upper)

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return "<BoxSet %s>" % " ".join("%g" % value for value in self.upper)


class PathCandidate(object):
    """A candidate path ``rho`` on ``[0, sbar]`` with margins ``alpha``.

    Args:
        rho (list): per-coordinate expressions in ``s`` (or callables).
        sbar (float): the end of the domain, ``> 0``.
        alpha (list): per-coordinate margins; defaults to ``epsilon * s``.
        epsilon (float): slope of the default margin.
    """

    def __init__(self, rho, sbar, alpha=None, epsilon=1e-6):
        self.rho = [ScalarFunction(component) for component in rho]
        self.sbar = float(sbar)
        if self.sbar <= 0:
            raise ValueError("sbar must be positive, got %r" % sbar)
        if alpha is None:
            alpha = [lambda s, eps=epsilon: eps * s for _ in self.rho]
        self.alpha = [ScalarFunction(component) for component in alpha]
        if len(self.alpha) != len(self.rho):
            raise DimensionMismatch("rho and alpha must have the same number of components")

    @property
    def dimension(self):
        return len(self.rho)

    def __call__(self, s):
        return np.array([component(s) for component in self.rho], dtype=float)

    def margin(self, s):
        return np.array([component(s) for component in self.alpha], dtype=float)

    def derivative(self, s):
        return np.array([component.derivative(s) for component in self.rho], dtype=float)

    @property
    def corner(self):
        """``rho(sbar)``, the upper corner of the certified box."""
        return self(self.sbar)

    def validate(self, points=1024, margin=1e-12):
        validators.validate_path(self, points=points, margin=margin)
        return self


def linear_path(w, sbar=1.0, alpha=None, epsilon=1e-6):
    """The ray ``rho(s) = w * s``."""
    w = np.asarray(w, dtype=float)
    return PathCandidate(
        [lambda s, wi=wi: wi * s for wi in w], sbar, alpha=alpha, epsilon=epsilon
    )


class ScalingPsi(object):
    """Componentwise scalings ``psi_i(x_i, y_i)`` of a vector field."""

    def __init__(self, components, dimension=None):
        parsed = []
        for component in components:
            if isinstance(component, str):
                component = parse(component, dimension=dimension)
            parsed.append(component)
        self.components = parsed
        self.dimension = len(parsed)

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        env = state_env(x)
        env.update(state_env(y, prefix="y"))
        shape = np.broadcast(x, y).shape[1:]
        values = []
        for component in self.components:
            if callable(component):
                values.append(component(x, y))
            else:
                values.append(component.evaluate(env))
        return _broadcast_rows(values, shape)

    def component(self, i, xi, yi):
        component = self.components[i]
        if callable(component):
            n = self.dimension
            x = np.zeros((n,) + np.shape(xi))
            y = np.zeros((n,) + np.shape(yi))
            x[i] = xi
            y[i] = yi
            return component(x, y)
        return component.evaluate({"x%d" % (i + 1): xi, "y%d" % (i + 1): yi})

    def validate(self, box, y_bound=1.0, points=1024, margin=1e-12):
        validators.validate_psi(self, box, y_bound=y_bound, points=points, margin=margin)
        return self

    @classmethod
    def diagonal(cls, d):
        """``psi_i(x_i, y_i) = d_i * y_i`` with constants ``d_i > 0``."""
        return cls(["%r*y%d" % (float(di), i + 1) for i, di in enumerate(d)])


class InitialHistory(object):
    """The initial function ``phi`` on ``[-tau_max, 0]``.

    Use :meth:`constant`, :meth:`from_expressions` or
    :meth:`piecewise_linear` to build one.
    """

    def __init__(self, kind, dimension, value=None, exprs=None, times=None, values=None):
        self.kind = kind
        self.dimension = int(dimension)
        self.value = value
        self.exprs = exprs
        self.times = times
        self.values = values

    @classmethod
    def constant(cls, value):
        value = np.atleast_1d(np.asarray(value, dtype=float))
        return cls("constant", value.shape[0], value=value)

    @classmethod
    def from_expressions(cls, sources):
        exprs = [parse(source) if isinstance(source, str) else source for source in sources]
        return cls("expression", len(exprs), exprs=exprs)

    @classmethod
    def piecewise_linear(cls, times, values):
        times = np.asarray(times, dtype=float)
        values = np.atleast_2d(np.asarray(values, dtype=float))
        if values.shape[0] != times.shape[0]:
            values = values.T
        if values.shape[0] != times.shape[0]:
            raise DimensionMismatch("one history sample per time is required")
        if np.any(np.diff(times) <= 0):
            raise ValueError("history sample times must be strictly increasing")
        return cls("piecewise", values.shape[1], times=times, values=values)

    @property
    def start(self):
        """The earliest time at which the history is defined."""
        if self.kind == "piecewise":
            return float(self.times[0])
        return -np.inf

    def __call__(self, t):
        if self.kind == "constant":
            return self.value.copy()
        if self.kind == "expression":
            return np.array([float(expr.evaluate({"t": t})) for expr in self.exprs])
        return np.array(
            [np.interp(t, self.times, self.values[:, i]) for i in range(self.dimension)]
        )

    def validate(self, tau_max, points=1024):
        validators.validate_history(self, tau_max, points=points)
        return self
