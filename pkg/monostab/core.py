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

"""System description files.

A description is a YAML mapping; see ``docs/grammar.rst`` for the keys and
for the expression grammar used inside them::

    dimension: 2
    g: ["-5*x1 + x1*y2^2", "y1 - 2*x2^2"]
    delay: {kind: proportional, params: {gamma: 0.5}}
    path: {rho: [s, sqrt(s)], sbar: 4, alpha: [s, s]}
    history: {kind: constant, value: [4, 2]}
"""

from __future__ import absolute_import, division, print_function

import io

import numpy as np
import yaml
from inspire_utils.helpers import force_list
from inspire_utils.record import get_value

from monostab.errors import ConfigError, ExprError, MonostabError
from monostab.expr import compile_system, free_variables
from monostab.homogeneity import Dilation
from monostab.integrators import IntegratorConfig
from monostab.model import (
    BoxSet,
    DelayField,
    DelayLaw,
    InitialHistory,
    PathCandidate,
    ScalingPsi,
    VectorField,
    build_delay_field,
    build_vector_field,
)

KNOWN_KEYS = frozenset(
    [
        "name",
        "dimension",
        "f",
        "g",
        "h",
        "d",
        "A",
        "B",
        "delay",
        "delays",
        "laws",
        "box",
        "w",
        "path",
        "psi",
        "history",
        "dilation",
        "integrator",
    ]
)


class SystemDescription(object):
    """A compiled system description.

    Attributes that the file does not provide are ``None``. ``field`` is the
    delay-free field: ``f`` itself, ``Ax``, or the field induced by ``g``.
    """

    def __init__(self, filename=None, lines=None):
        self.filename = filename
        self.lines = lines or {}
        self.name = None
        self.dimension = None
        self.field = None
        self.delay_field = None
        self.law = None
        self.laws = None
        self.h = None
        self.d = None
        self.A = None
        self.B = None
        self.box = None
        self.w = None
        self.path = None
        self.psi = None
        self.history = None
        self.dilation = None
        self.sweep_laws = []
        self.integrator = {}

    def error(self, key, message):
        return ConfigError(message, self.filename, self.lines.get(key))

    @property
    def corner(self):
        """The natural working box corner: ``box``, else ``w``, else ``rho(sbar)``."""
        if self.box is not None:
            return self.box.upper
        if self.w is not None:
            return self.w
        if self.path is not None:
            return self.path.corner
        return None

    def working_box(self):
        corner = self.corner
        if corner is None:
            raise self.error("box", "the description defines no box, w or path")
        return BoxSet(corner)


def _collect_lines(node, prefix, lines):
    if isinstance(node, yaml.MappingNode):
        for key_node, value_node in node.value:
            path = "%s.%s" % (prefix, key_node.value) if prefix else key_node.value
            lines[path] = key_node.start_mark.line + 1
            _collect_lines(value_node, path, lines)
    elif isinstance(node, yaml.SequenceNode):
        for i, item in enumerate(node.value):
            path = "%s[%d]" % (prefix, i)
            lines[path] = item.start_mark.line + 1
            _collect_lines(item, path, lines)


def load(source, filename=None):
    """Read YAML text into ``(data, lines)``.

    ``lines`` maps dotted key paths (``"path.sbar"``) to 1-based line numbers.

    Raises:
        ConfigError: the text is not a YAML mapping.
    """
    loader = yaml.SafeLoader(source)
    try:
        node = loader.get_single_node()
        data = loader.construct_document(node) if node is not None else None
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        raise ConfigError(
            "Malformed YAML: %s" % getattr(e, "problem", e),
            filename,
            mark.line + 1 if mark is not None else None,
        )
    finally:
        loader.dispose()
    if not isinstance(data, dict):
        raise ConfigError("Malformed description: expected a mapping at the top level", filename, 1)
    lines = {}
    _collect_lines(node, "", lines)
    return data, lines


def compile_file(path):
    """Load and compile the description stored at ``path``."""
    try:
        with io.open(path, encoding="utf-8") as stream:
            text = stream.read()
    except (IOError, OSError) as e:
        raise ConfigError("cannot read description: %s" % e, path)
    data, lines = load(text, filename=path)
    return compile(data, filename=path, lines=lines)


def compile(config, filename=None, lines=None):
    """Turn a description mapping into a :class:`SystemDescription`.

    Args:
        config (dict): the parsed YAML mapping.
        filename (str): used in error messages.
        lines (dict): key path to line number, as returned by :func:`load`.

    Raises:
        ConfigError: a key is unknown, missing or malformed.
        Assumption1Violated: a delay law fails the Assumption-1 check.
        OriginNotEquilibrium: a field does not vanish at the origin.
    """
    result = SystemDescription(filename, lines)

    unknown = sorted(set(config) - KNOWN_KEYS)
    if unknown:
        raise result.error(unknown[0], "unknown key %r" % unknown[0])
    if "f" in config and "g" in config:
        raise result.error("g", "give either f or g, not both")
    if "h" in config and ({"f", "g", "A"} & set(config)):
        raise result.error("h", "h and d describe the whole system; drop f, g and A")
    if "d" in config and "h" not in config:
        raise result.error("d", "d needs h")

    for key, compile_section in _SECTIONS:
        if key not in config:
            continue
        try:
            compile_section(config, result)
        except ConfigError:
            raise
        except ExprError as e:
            raise result.error(key, "%s: %s" % (key, e))
        except MonostabError:
            raise
        except (KeyError, TypeError, ValueError, NotImplementedError) as e:
            raise result.error(key, "Malformed %s: %s" % (key, _describe(e)))

    if result.field is None and result.delay_field is None and result.h is None:
        raise result.error("dimension", "the description defines no f, g, A or h")
    return result


def _describe(error):
    if isinstance(error, NotImplementedError):
        return "unknown kind %s" % error
    if isinstance(error, KeyError):
        return "missing key %s" % error
    return str(error)


def _dimension(config, result):
    dimension = config["dimension"]
    if isinstance(dimension, bool) or not isinstance(dimension, int) or dimension < 1:
        raise ValueError("dimension must be a positive integer, got %r" % dimension)
    result.dimension = dimension


def _expressions(config, key, result):
    sources = [str(source) for source in force_list(config[key])]
    if result.dimension is None:
        result.dimension = len(sources)
    if len(sources) != result.dimension:
        raise ValueError("expected %d expressions, got %d" % (result.dimension, len(sources)))
    return sources


def _vector(value, result, positive=False):
    vector = np.array([float(item) for item in force_list(value)])
    if result.dimension is None:
        result.dimension = len(vector)
    if vector.shape != (result.dimension,):
        raise ValueError("expected %d numbers, got %d" % (result.dimension, len(vector)))
    if positive and np.any(vector <= 0):
        raise ValueError("all entries must be positive, got %r" % list(vector))
    return vector


def _matrix(value, result):
    matrix = np.array([[float(item) for item in force_list(row)] for row in force_list(value)])
    if result.dimension is None:
        result.dimension = matrix.shape[0]
    if matrix.shape != (result.dimension, result.dimension):
        raise ValueError("expected a %d x %d matrix" % (result.dimension, result.dimension))
    return matrix


def _compile_name(config, result):
    result.name = str(config["name"])


def _compile_f(config, result):
    system = compile_system(_expressions(config, "f", result), result.dimension)
    result.field = build_vector_field(system)


def _compile_matrices(config, result):
    result.A = _matrix(config["A"], result)
    if "B" in config:
        result.B = _matrix(config["B"], result)
    if result.field is None and "g" not in config:
        result.field = VectorField.linear(result.A if result.B is None else result.A + result.B)


def _compile_delay_law(config, result):
    if "delays" in config:
        if "delay" in config:
            raise ValueError("give either delay or delays, not both")
        rows = force_list(config["delays"])
        result.laws = [[_compile_law(entry) for entry in force_list(row)] for row in rows]
    else:
        result.law = _compile_law(config["delay"])


def _compile_law(delay):
    if isinstance(delay, str):
        return DelayLaw.parse(delay)
    if isinstance(delay, (int, float)):
        return DelayLaw.constant(delay)

    kind = delay["kind"]
    params = delay.get("params", {})

    if kind == "constant":
        return _compile_constant(params)
    elif kind == "sinusoidal":
        return _compile_sinusoidal(params)
    elif kind == "proportional":
        return _compile_proportional(params)
    elif kind == "expression":
        return _compile_expression(delay, params)
    elif kind == "zero":
        return DelayLaw.constant(0.0)

    raise NotImplementedError(kind)


def _compile_constant(params):
    return DelayLaw.constant(params["c"])


def _compile_sinusoidal(params):
    return DelayLaw.sinusoidal(params["a"], params["b"], params.get("omega", 1.0))


def _compile_proportional(params):
    return DelayLaw.proportional(params["gamma"])


def _compile_expression(delay, params):
    source = delay.get("expr", params.get("expr"))
    if source is None:
        raise KeyError("expr")
    return DelayLaw.from_expression(str(source))


def _compile_g(config, result):
    system = compile_system(_expressions(config, "g", result), result.dimension, role="delayed")
    law = result.laws if result.laws is not None else result.law
    if law is None:
        law = result.law = DelayLaw.constant(0.0)
    result.delay_field = build_delay_field(system, law)
    result.field = result.delay_field.induced()


def _compile_linear_delay(config, result):
    if "A" not in config:
        raise KeyError("A")
    if "g" in config:
        return
    law = result.law or DelayLaw.constant(0.0)
    if result.laws is None:
        result.law = law
    result.delay_field = DelayField.linear(result.A, result.B, law=result.law, laws=result.laws)
    for entry in result.delay_field.all_laws():
        entry.check_assumption1()


def _compile_non_monotone(config, result):
    sources = _expressions(config, "h", result)
    result.h = build_vector_field(compile_system(sources, result.dimension))
    if "d" in config:
        result.d = _compile_d(config, result)
    else:
        result.d = VectorField.linear(np.zeros((result.dimension, result.dimension)))
    if result.laws is None and result.law is None:
        result.law = DelayLaw.constant(0.0)
    result.delay_field = DelayField.from_parts(result.h, result.d, law=result.law, laws=result.laws)
    result.field = result.delay_field.induced()


def _compile_d(config, result):
    try:
        system = compile_system(_expressions(config, "d", result), result.dimension, role="delayed")
    except ExprError as e:
        raise result.error("d", "d: %s" % e)
    used = set().union(*[free_variables(component) for component in system.components])
    states = sorted(name for name in used if name.startswith("x"))
    if states:
        raise result.error("d", "Malformed d: it may only use y1..yn, uses %s" % ", ".join(states))
    return VectorField.from_delayed_part(system)


def _compile_box(config, result):
    result.box = BoxSet(_vector(config["box"], result))


def _compile_w(config, result):
    result.w = _vector(config["w"], result)


def _compile_path(config, result):
    path = config["path"]
    rho = [str(source) for source in force_list(get_value(path, "rho"))]
    if not rho:
        raise KeyError("path.rho")
    sbar = get_value(path, "sbar")
    if sbar is None:
        raise KeyError("path.sbar")
    alpha = get_value(path, "alpha")
    if alpha is not None:
        alpha = [str(source) for source in force_list(alpha)]
    epsilon = float(get_value(path, "epsilon", 1e-6))
    result.path = PathCandidate(rho, float(sbar), alpha=alpha, epsilon=epsilon)


def _compile_psi(config, result):
    sources = _expressions(config, "psi", result)
    result.psi = ScalingPsi(sources, dimension=result.dimension)


def _compile_history(config, result):
    history = config["history"]
    if not isinstance(history, dict):
        history = {"kind": "constant", "value": history}
    kind = history.get("kind", "constant")

    if kind == "constant":
        result.history = InitialHistory.constant(_vector(history["value"], result))
    elif kind == "expression":
        sources = [str(source) for source in force_list(history["expr"])]
        result.history = InitialHistory.from_expressions(sources)
    elif kind == "piecewise":
        result.history = InitialHistory.piecewise_linear(history["times"], history["values"])
    else:
        raise NotImplementedError(kind)


def _compile_dilation(config, result):
    dilation = config["dilation"]
    weights = get_value(dilation, "weights")
    if weights is None:
        weights = [1.0] * (result.dimension or 1)
    result.dilation = Dilation(force_list(weights), float(get_value(dilation, "degree", 0.0)))


def _compile_laws(config, result):
    result.sweep_laws = [_compile_law(entry) for entry in force_list(config["laws"])]


def _compile_integrator(config, result):
    settings = dict(config["integrator"] or {})
    try:
        IntegratorConfig.from_mapping(settings)
    except KeyError as e:
        raise ValueError(e.args[0])
    result.integrator = settings


# Order matters: dimension first, delay laws before g, matrices after f.
_SECTIONS = (
    ("name", _compile_name),
    ("dimension", _dimension),
    ("f", _compile_f),
    ("delay", _compile_delay_law),
    ("delays", _compile_delay_law),
    ("g", _compile_g),
    ("A", _compile_matrices),
    ("B", _compile_linear_delay),
    ("h", _compile_non_monotone),
    ("box", _compile_box),
    ("w", _compile_w),
    ("path", _compile_path),
    ("psi", _compile_psi),
    ("history", _compile_history),
    ("dilation", _compile_dilation),
    ("laws", _compile_laws),
    ("integrator", _compile_integrator),
)
