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

"""Scalar expression language used by system description files.

The grammar is documented in ``docs/grammar.rst``. Expressions are immutable
trees; :meth:`Expr.evaluate` accepts floats or numpy arrays bound to the
variables, so the same tree serves integrators and vectorised grid sweeps.
"""

from __future__ import absolute_import, division, print_function

import math
import re

import numpy as np

from monostab.errors import (
    ArityMismatch,
    BadNumber,
    DomainError,
    ExprError,
    NonDifferentiablePrimitive,
    UnbalancedParens,
    UnboundVariable,
    UnexpectedToken,
    UnknownIdentifier,
)

FUNCTIONS = {
    "sqrt": 1,
    "exp": 1,
    "ln": 1,
    "abs": 1,
    "pow": 2,
    "min": 2,
    "max": 2,
}
"""Callable names and their arity."""

NON_SMOOTH_FUNCTIONS = frozenset(["abs", "min", "max"])

SCALAR_VARIABLES = frozenset(["s", "t", "lambda"])

MAX_NESTING = 64

_VARIABLE_RE = re.compile(r"^([xy])([1-9][0-9]*)$")
_NUMBER_RE = re.compile(r"^(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?$")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 3}
_UNARY_PRECEDENCE = 4
_ATOM_PRECEDENCE = 5


def _is_array(value):
    return isinstance(value, np.ndarray)


class Expr(object):
    """Base class of expression nodes."""

    __slots__ = ()

    precedence = _ATOM_PRECEDENCE

    def evaluate(self, env):
        raise NotImplementedError

    def children(self):
        return ()

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def __repr__(self):
        return "<%s %s>" % (type(self).__name__, pretty(self))

    def __str__(self):
        return pretty(self)

    def _key(self):
        raise NotImplementedError


class Num(Expr):
    __slots__ = ("value",)

    def __init__(self, value):
        object.__setattr__(self, "value", float(value))

    def __setattr__(self, name, value):
        raise AttributeError("expressions are immutable")

    @property
    def precedence(self):
        return _UNARY_PRECEDENCE if self.value < 0 else _ATOM_PRECEDENCE

    def evaluate(self, env):
        return self.value

    def _key(self):
        return (self.value,)


class Var(Expr):
    __slots__ = ("name",)

    def __init__(self, name):
        object.__setattr__(self, "name", name)

    def __setattr__(self, name, value):
        raise AttributeError("expressions are immutable")

    def evaluate(self, env):
        try:
            return env[self.name]
        except KeyError:
            raise UnboundVariable(self.name)

    def _key(self):
        return (self.name,)


class Neg(Expr):
    __slots__ = ("arg",)

    precedence = _UNARY_PRECEDENCE

    def __init__(self, arg):
        object.__setattr__(self, "arg", arg)

    def __setattr__(self, name, value):
        raise AttributeError("expressions are immutable")

    def evaluate(self, env):
        return -self.arg.evaluate(env)

    def children(self):
        return (self.arg,)

    def _key(self):
        return (self.arg,)


class BinOp(Expr):
    __slots__ = ("op", "left", "right")

    def __init__(self, op, left, right):
        object.__setattr__(self, "op", op)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    def __setattr__(self, name, value):
        raise AttributeError("expressions are immutable")

    @property
    def precedence(self):
        return _PRECEDENCE[self.op]

    def evaluate(self, env):
        left = self.left.evaluate(env)
        right = self.right.evaluate(env)
        op = self.op
        if op == "+":
            return left + right
        if op == "-":
            return left - right
        if op == "*":
            return left * right
        if op == "/":
            return _divide(left, right)
        return _power(left, right)

    def children(self):
        return (self.left, self.right)

    def _key(self):
        return (self.op, self.left, self.right)


class Call(Expr):
    __slots__ = ("name", "args")

    def __init__(self, name, args):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "args", tuple(args))

    def __setattr__(self, name, value):
        raise AttributeError("expressions are immutable")

    def evaluate(self, env):
        values = [arg.evaluate(env) for arg in self.args]
        return _CALLS[self.name](*values)

    def children(self):
        return self.args

    def _key(self):
        return (self.name, self.args)


def _divide(left, right):
    if _is_array(left) or _is_array(right):
        if np.any(np.asarray(right) == 0):
            raise DomainError("division by zero")
        return np.true_divide(left, right)
    if right == 0:
        raise DomainError("division by zero")
    return left / right


def _power(base, exponent):
    if _is_array(base) or _is_array(exponent):
        base_arr, exp_arr = np.broadcast_arrays(
            np.asarray(base, dtype=float), np.asarray(exponent, dtype=float)
        )
        if np.any((base_arr < 0) & (exp_arr != np.floor(exp_arr))):
            raise DomainError("negative base raised to a non-integer power")
        if np.any((base_arr == 0) & (exp_arr < 0)):
            raise DomainError("division by zero")
        with np.errstate(over="ignore"):
            return np.power(base_arr, exp_arr)
    if base < 0 and exponent != math.floor(exponent):
        raise DomainError("negative base raised to a non-integer power")
    if base == 0 and exponent < 0:
        raise DomainError("division by zero")
    try:
        return float(base) ** exponent
    except OverflowError:
        return math.copysign(float("inf"), base) if exponent % 2 else float("inf")


def _sqrt(value):
    if _is_array(value):
        if np.any(value < 0):
            raise DomainError("sqrt of a negative number")
        return np.sqrt(value)
    if value < 0:
        raise DomainError("sqrt of a negative number")
    return math.sqrt(value)


def _ln(value):
    if _is_array(value):
        if np.any(value <= 0):
            raise DomainError("ln of a nonpositive number")
        return np.log(value)
    if value <= 0:
        raise DomainError("ln of a nonpositive number")
    return math.log(value)


def _exp(value):
    if _is_array(value):
        with np.errstate(over="ignore"):
            return np.exp(value)
    try:
        return math.exp(value)
    except OverflowError:
        return float("inf")


def _abs(value):
    return np.abs(value) if _is_array(value) else abs(value)


def _min(left, right):
    if _is_array(left) or _is_array(right):
        return np.minimum(left, right)
    return min(left, right)


def _max(left, right):
    if _is_array(left) or _is_array(right):
        return np.maximum(left, right)
    return max(left, right)


_CALLS = {
    "sqrt": _sqrt,
    "exp": _exp,
    "ln": _ln,
    "abs": _abs,
    "pow": _power,
    "min": _min,
    "max": _max,
}


# Tokenizer


class _Token(object):
    __slots__ = ("kind", "text", "offset")

    def __init__(self, kind, text, offset):
        self.kind = kind
        self.text = text
        self.offset = offset


def _byte_offset(source, index):
    return len(source[:index].encode("utf-8"))


def _tokenize(source):
    tokens = []
    i = 0
    length = len(source)
    while i < length:
        char = source[i]
        if char in " \t\r\n":
            i += 1
            continue
        offset = _byte_offset(source, i)
        if char.isdigit() and char.isascii() or char == ".":
            j = i
            while j < length and (source[j].isascii() and source[j].isdigit() or source[j] == "."):
                j += 1
            if j < length and source[j] in "eE":
                j += 1
                if j < length and source[j] in "+-":
                    j += 1
                while j < length and source[j].isascii() and source[j].isdigit():
                    j += 1
            text = source[i:j]
            if not _NUMBER_RE.match(text):
                raise BadNumber("malformed number %r" % text, offset)
            if math.isinf(float(text)):
                raise BadNumber("number %r overflows" % text, offset)
            tokens.append(_Token("number", text, offset))
            i = j
            continue
        match = _IDENT_RE.match(source, i)
        if match:
            tokens.append(_Token("ident", match.group(0), offset))
            i = match.end()
            continue
        if char in "+-*/^":
            tokens.append(_Token("op", char, offset))
        elif char == "(":
            tokens.append(_Token("(", char, offset))
        elif char == ")":
            tokens.append(_Token(")", char, offset))
        elif char == ",":
            tokens.append(_Token(",", char, offset))
        else:
            raise UnexpectedToken("unexpected character %r" % char, offset)
        i += 1
    tokens.append(_Token("end", "", _byte_offset(source, length)))
    return tokens


# Parser


_PRIMARY_START = ("number", "identifier", "(", "-")


class _Parser(object):
    def __init__(self, source, dimension):
        self.tokens = _tokenize(source)
        self.position = 0
        self.depth = 0
        self.open_parens = []
        self.dimension = dimension

    @property
    def current(self):
        return self.tokens[self.position]

    def advance(self):
        token = self.tokens[self.position]
        self.position += 1
        return token

    def parse(self):
        result = self.expression()
        token = self.current
        if token.kind == ")":
            raise UnbalancedParens("unmatched ')'", token.offset)
        if token.kind != "end":
            raise UnexpectedToken(
                "unexpected %r" % token.text, token.offset, ["+", "-", "*", "/", "^", "end"]
            )
        return result

    def expression(self):
        self.depth += 1
        if self.depth > MAX_NESTING:
            raise ExprError("expression nested too deeply", self.current.offset)
        left = self.term()
        while self.current.kind == "op" and self.current.text in "+-":
            op = self.advance().text
            left = BinOp(op, left, self.term())
        self.depth -= 1
        return left

    def term(self):
        left = self.power()
        while self.current.kind == "op" and self.current.text in "*/":
            op = self.advance().text
            left = BinOp(op, left, self.power())
        return left

    def power(self):
        base = self.unary()
        if self.current.kind == "op" and self.current.text == "^":
            self.advance()
            self.depth += 1
            if self.depth > MAX_NESTING:
                raise ExprError("expression nested too deeply", self.current.offset)
            exponent = self.power()
            self.depth -= 1
            return BinOp("^", base, exponent)
        return base

    def unary(self):
        if self.current.kind == "op" and self.current.text == "-":
            self.advance()
            self.depth += 1
            if self.depth > MAX_NESTING:
                raise ExprError("expression nested too deeply", self.current.offset)
            arg = self.unary()
            self.depth -= 1
            return Neg(arg)
        return self.primary()

    def primary(self):
        token = self.current
        if token.kind == "number":
            self.advance()
            return Num(float(token.text))
        if token.kind == "ident":
            self.advance()
            if self.current.kind == "(":
                return self.call(token)
            return self.variable(token)
        if token.kind == "(":
            self.advance()
            self.open_parens.append(token.offset)
            inner = self.expression()
            if self.current.kind != ")":
                raise UnbalancedParens("'(' is never closed", self.current.offset)
            self.advance()
            self.open_parens.pop()
            return inner
        if token.kind == "end" and self.open_parens:
            raise UnbalancedParens("'(' is never closed", token.offset)
        raise UnexpectedToken(
            "unexpected %s" % (repr(token.text) if token.text else "end of input"),
            token.offset,
            _PRIMARY_START,
        )

    def call(self, name_token):
        name = name_token.text
        if name not in FUNCTIONS:
            raise UnknownIdentifier("unknown function %r" % name, name_token.offset)
        open_token = self.advance()
        self.open_parens.append(open_token.offset)
        args = [self.expression()]
        while self.current.kind == ",":
            self.advance()
            args.append(self.expression())
        if self.current.kind != ")":
            if self.current.kind == "end":
                raise UnbalancedParens("'(' is never closed", self.current.offset)
            raise UnexpectedToken(
                "unexpected %r" % self.current.text, self.current.offset, [",", ")"]
            )
        self.advance()
        self.open_parens.pop()
        if len(args) != FUNCTIONS[name]:
            raise ArityMismatch(
                "%s takes %d argument(s), got %d" % (name, FUNCTIONS[name], len(args)),
                name_token.offset,
            )
        return Call(name, args)

    def variable(self, token):
        name = token.text
        if name in SCALAR_VARIABLES:
            return Var(name)
        match = _VARIABLE_RE.match(name)
        if not match:
            raise UnknownIdentifier("unknown identifier %r" % name, token.offset)
        index = int(match.group(2))
        if self.dimension is not None and index > self.dimension:
            raise UnknownIdentifier(
                "%r exceeds the declared dimension %d" % (name, self.dimension),
                token.offset,
            )
        return Var(name)


def parse(source, dimension=None):
    """Parse a source string into an expression tree.

    Args:
        source (str): the expression text, e.g. ``"-5*x1 + x1*x2^2"``.
        dimension (int): when given, ``xk``/``yk`` with ``k > dimension`` are
            rejected.

    Returns:
        Expr: the parsed tree.

    Raises:
        ExprError: one of its subclasses, carrying the byte offset.
    """
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as e:
            raise UnexpectedToken("source is not valid UTF-8", e.start)
    if not isinstance(source, str):
        raise ExprError("expected text, got %s" % type(source).__name__)
    if not source.strip():
        raise UnexpectedToken("empty expression", 0, _PRIMARY_START)
    return _Parser(source, dimension).parse()


def evaluate(expr, env):
    """Evaluate ``expr`` with variables bound by ``env``."""
    return expr.evaluate(env)


def free_variables(expr):
    """Return the names of the variables occurring in ``expr``."""
    if isinstance(expr, Var):
        return frozenset([expr.name])
    result = frozenset()
    for child in expr.children():
        result |= free_variables(child)
    return result


def contains_non_smooth(expr):
    if isinstance(expr, Call) and expr.name in NON_SMOOTH_FUNCTIONS:
        return True
    return any(contains_non_smooth(child) for child in expr.children())


# Differentiation


ZERO = Num(0.0)
ONE = Num(1.0)


def _is_const(expr, value):
    return isinstance(expr, Num) and expr.value == value


def _add(left, right):
    if _is_const(left, 0.0):
        return right
    if _is_const(right, 0.0):
        return left
    return BinOp("+", left, right)


def _sub(left, right):
    if _is_const(right, 0.0):
        return left
    if _is_const(left, 0.0):
        return _neg(right)
    return BinOp("-", left, right)


def _mul(left, right):
    if _is_const(left, 0.0) or _is_const(right, 0.0):
        return ZERO
    if _is_const(left, 1.0):
        return right
    if _is_const(right, 1.0):
        return left
    return BinOp("*", left, right)


def _div(left, right):
    if _is_const(left, 0.0):
        return ZERO
    if _is_const(right, 1.0):
        return left
    return BinOp("/", left, right)


def _neg(arg):
    if isinstance(arg, Num):
        return Num(-arg.value)
    return Neg(arg)


def _pow(base, exponent):
    if _is_const(exponent, 1.0):
        return base
    if _is_const(exponent, 0.0):
        return ONE
    return BinOp("^", base, exponent)


def _derivative_of_power(base, exponent, var):
    d_base = _diff(base, var)
    if var not in free_variables(exponent):
        if isinstance(exponent, Num):
            reduced = Num(exponent.value - 1.0)
        else:
            reduced = BinOp("-", exponent, ONE)
        return _mul(_mul(exponent, _pow(base, reduced)), d_base)
    d_exponent = _diff(exponent, var)
    if var not in free_variables(base):
        return _mul(_mul(BinOp("^", base, exponent), Call("ln", [base])), d_exponent)
    return _mul(
        BinOp("^", base, exponent),
        _add(
            _mul(d_exponent, Call("ln", [base])),
            _div(_mul(exponent, d_base), base),
        ),
    )


def _diff(expr, var):
    if isinstance(expr, Num):
        return ZERO
    if isinstance(expr, Var):
        return ONE if expr.name == var else ZERO
    if var not in free_variables(expr):
        return ZERO
    if isinstance(expr, Neg):
        return _neg(_diff(expr.arg, var))
    if isinstance(expr, BinOp):
        left, right = expr.left, expr.right
        if expr.op == "+":
            return _add(_diff(left, var), _diff(right, var))
        if expr.op == "-":
            return _sub(_diff(left, var), _diff(right, var))
        if expr.op == "*":
            return _add(_mul(_diff(left, var), right), _mul(left, _diff(right, var)))
        if expr.op == "/":
            numerator = _sub(_mul(_diff(left, var), right), _mul(left, _diff(right, var)))
            return _div(numerator, BinOp("^", right, Num(2.0)))
        return _derivative_of_power(left, right, var)
    if expr.name == "pow":
        return _derivative_of_power(expr.args[0], expr.args[1], var)
    arg = expr.args[0]
    d_arg = _diff(arg, var)
    if expr.name == "sqrt":
        return _div(d_arg, _mul(Num(2.0), expr))
    if expr.name == "exp":
        return _mul(expr, d_arg)
    if expr.name == "ln":
        return _div(d_arg, arg)
    raise NonDifferentiablePrimitive("%s is not differentiable" % expr.name)


def differentiate(expr, var):
    """Return the partial derivative of ``expr`` with respect to ``var``.

    Only trivial constant folding is applied (``0*e``, ``1*e``, ``e+0``).

    Raises:
        NonDifferentiablePrimitive: ``expr`` contains ``abs``, ``min`` or ``max``.
    """
    if contains_non_smooth(expr):
        raise NonDifferentiablePrimitive(
            "abs, min and max are not differentiable; use finite differences"
        )
    return _diff(expr, var)


def central_difference(expr, var, env, h=1e-6):
    """Central finite difference of ``expr`` along ``var`` at ``env``."""
    forward = dict(env)
    backward = dict(env)
    forward[var] = env[var] + h
    backward[var] = env[var] - h
    return (expr.evaluate(forward) - expr.evaluate(backward)) / (2 * h)


# Printing


def _format_number(value):
    if value.is_integer() and abs(value) < 1e15:
        return "%d" % value
    return repr(value)


def pretty(expr):
    """Render ``expr`` as source text accepted by :func:`parse`."""
    if isinstance(expr, Num):
        return _format_number(expr.value)
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Neg):
        inner = pretty(expr.arg)
        if expr.arg.precedence < _UNARY_PRECEDENCE:
            inner = "(%s)" % inner
        return "-" + inner
    if isinstance(expr, Call):
        return "%s(%s)" % (expr.name, ", ".join(pretty(arg) for arg in expr.args))
    op = expr.op
    prec = _PRECEDENCE[op]
    left = pretty(expr.left)
    right = pretty(expr.right)
    if expr.left.precedence < prec or (op == "^" and expr.left.precedence == prec):
        left = "(%s)" % left
    if expr.right.precedence < prec or (op != "^" and expr.right.precedence == prec):
        right = "(%s)" % right
    if op in "+-":
        return "%s %s %s" % (left, op, right)
    return "%s%s%s" % (left, op, right)


# Systems


class ExprSystem(object):
    """``n`` component expressions sharing one set of variables.

    Args:
        dimension (int): the state dimension ``n``.
        components (list(Expr)): exactly ``n`` expressions.
        role (str): ``"state"`` (variables ``x1..xn``) or ``"delayed"``
            (variables ``x1..xn`` and ``y1..yn``).
    """

    ROLES = ("state", "delayed")

    def __init__(self, dimension, components, role="state"):
        if role not in self.ROLES:
            raise ValueError("Unknown role %r" % role)
        if int(dimension) != dimension or dimension < 1:
            raise ExprError("dimension must be a positive integer, got %r" % dimension)
        components = tuple(components)
        if len(components) != dimension:
            raise ArityMismatch(
                "expected %d component expressions, got %d" % (dimension, len(components))
            )
        allowed = {"x%d" % (i + 1) for i in range(dimension)}
        if role == "delayed":
            allowed |= {"y%d" % (i + 1) for i in range(dimension)}
        for i, component in enumerate(components):
            unexpected = free_variables(component) - allowed
            if unexpected:
                raise UnknownIdentifier(
                    "component %d uses %s, not allowed for a %s system"
                    % (i + 1, ", ".join(sorted(unexpected)), role)
                )
        self.dimension = int(dimension)
        self.components = components
        self.role = role

    @property
    def is_delayed(self):
        return self.role == "delayed"

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return self.dimension


def compile_system(sources, dimension=None, role="state"):
    """Parse a list of sources into an :class:`ExprSystem`."""
    sources = list(sources)
    if dimension is None:
        dimension = len(sources)
    components = [parse(source, dimension=dimension) for source in sources]
    return ExprSystem(dimension, components, role=role)


def state_env(x, prefix="x"):
    """Bind ``x1..xn`` (or ``y1..yn``) to the rows of ``x``."""
    return {"%s%d" % (prefix, i + 1): x[i] for i in range(len(x))}
