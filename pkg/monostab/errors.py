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

"""Exceptions raised by monostab."""

from __future__ import absolute_import, division, print_function


class MonostabError(Exception):
    """Base class of every error raised by this package."""


# Expressions


class ExprError(MonostabError, ValueError):
    """A source text could not be turned into an expression.

    Args:
        message (str): human readable description.
        offset (int): byte offset in the source where the problem starts.
        expected (iterable(str)): tokens that would have been accepted.
    """

    def __init__(self, message, offset=None, expected=None):
        self.offset = offset
        self.expected = tuple(sorted(expected)) if expected else ()
        if offset is not None:
            message = "%s at offset %d" % (message, offset)
        if self.expected:
            message = "%s (expected one of: %s)" % (message, ", ".join(self.expected))
        super(ExprError, self).__init__(message)


class UnknownIdentifier(ExprError):
    pass


class UnbalancedParens(ExprError):
    pass


class BadNumber(ExprError):
    pass


class ArityMismatch(ExprError):
    pass


class UnexpectedToken(ExprError):
    pass


class DomainError(MonostabError, ArithmeticError):
    """Evaluation left the domain of sqrt, ln or division."""


class UnboundVariable(MonostabError, KeyError):
    def __str__(self):
        return "Unbound variable: %s" % self.args[0]


class NonDifferentiablePrimitive(MonostabError, ValueError):
    pass


# System model


class OriginNotEquilibrium(MonostabError, ValueError):
    pass


class DimensionMismatch(MonostabError, ValueError):
    pass


class Assumption1Violated(MonostabError, ValueError):
    pass


class PathValidationFailure(MonostabError, ValueError):
    pass


class PsiValidationFailure(MonostabError, ValueError):
    pass


class HistoryValidationFailure(MonostabError, ValueError):
    pass


class ConfigError(MonostabError, ValueError):
    """A system description file is malformed.

    Args:
        message (str): description of the problem.
        filename (str): the file being read.
        line (int): 1-based line of the offending key, when known.
    """

    def __init__(self, message, filename=None, line=None):
        self.filename = filename
        self.line = line
        if filename is not None and line is not None:
            message = "%s:%d: %s" % (filename, line, message)
        elif filename is not None:
            message = "%s: %s" % (filename, message)
        super(ConfigError, self).__init__(message)


# Integration


class IntegrationError(MonostabError, RuntimeError):
    pass


class StepSizeUnderflow(IntegrationError):
    pass


class NonFiniteState(IntegrationError):
    pass


class HistoryGap(IntegrationError):
    pass


# Linear analysis


class EigenFailure(MonostabError, ArithmeticError):
    pass


class LPNumericalFailure(MonostabError, ArithmeticError):
    pass


# Lyapunov functions and certificates


class NondifferentiablePoint(MonostabError, ArithmeticError):
    pass


class NotInOmega(MonostabError, ValueError):
    pass


class NoConvergence(MonostabError, RuntimeError):
    def __init__(self, message, terminal_state=None):
        self.terminal_state = terminal_state
        super(NoConvergence, self).__init__(message)


class NonmonotoneComponent(MonostabError, ValueError):
    pass


class PathDomainError(MonostabError, ValueError):
    pass


class PreconditionViolation(MonostabError, ValueError):
    pass


# Delay analysis


class UncertifiedLyapunov(MonostabError, ValueError):
    pass


class UncertifiedPath(MonostabError, ValueError):
    pass


class ConditionFailed(MonostabError, ValueError):
    def __init__(self, message, component=None):
        self.component = component
        super(ConditionFailed, self).__init__(message)


# Homogeneity


class NegativityFailed(MonostabError, ValueError):
    pass


class Assumption3Violated(MonostabError, ValueError):
    def __init__(self, message, item=None, witness=None):
        self.item = item
        self.witness = witness
        super(Assumption3Violated, self).__init__(message)


class CertificationFailed(MonostabError, RuntimeError):
    pass
