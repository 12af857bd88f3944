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

"""Verdict reports rendered as text or CSV."""

from __future__ import absolute_import, division, print_function

import csv
import io

import numpy as np

PASS = "PASS"
FAIL = "FAIL"
PRECONDITION = "PRECONDITION"

TEXT_DIGITS = 6
CSV_DIGITS = 17


def format_value(value, digits=TEXT_DIGITS):
    """Render a report value; numbers use ``digits`` significant digits.

    Examples:
        >>> format_value([4.0, 2.0])
        '4 2'
    """
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return "%d" % value
    if isinstance(value, (float, np.floating)):
        return "%.*g" % (digits, value)
    if isinstance(value, (list, tuple, np.ndarray)):
        items = np.ravel(np.asarray(value, dtype=object))
        return " ".join(format_value(item, digits) for item in items)
    return str(value)


class Report(object):
    """The outcome of a check.

    Args:
        name (str): what was checked, e.g. ``"kamke"``.
        status (str): the verdict.
        witness (dict): the offending data when the check failed.
        metadata (dict): grid sizes, tolerances and similar settings.
        columns (list(str)): column names of ``rows``.
        rows (list(list)): a per-item table (per law, per level, ...).
    """

    passing = (PASS,)

    def __init__(self, name, status, witness=None, metadata=None, columns=None, rows=None):
        self.name = name
        self.status = status
        self.witness = dict(witness or {})
        self.metadata = dict(metadata or {})
        self.columns = list(columns or [])
        self.rows = [list(row) for row in rows or []]

    @property
    def passed(self):
        return self.status in self.passing

    def __bool__(self):
        return self.passed

    __nonzero__ = __bool__

    def __repr__(self):
        return "<%s %s %s>" % (type(self).__name__, self.name, self.status)

    def items(self):
        """Ordered ``(key, value)`` pairs describing the report."""
        result = [("check", self.name), ("status", self.status)]
        result.extend(("witness.%s" % key, value) for key, value in sorted(self.witness.items()))
        result.extend(sorted(self.metadata.items()))
        return result

    def to_text(self):
        lines = ["%s: %s" % (key, format_value(value)) for key, value in self.items()]
        if self.rows:
            lines.append(" ".join(self.columns))
            for row in self.rows:
                lines.append(" ".join(format_value(value) for value in row))
        return "\n".join(lines) + "\n"

    def to_csv(self):
        stream = io.StringIO()
        writer = csv.writer(stream, lineterminator="\n")
        if self.rows:
            writer.writerow(self.columns)
            for row in self.rows:
                writer.writerow([format_value(value, CSV_DIGITS) for value in row])
        else:
            writer.writerow(["key", "value"])
            for key, value in self.items():
                writer.writerow([key, format_value(value, CSV_DIGITS)])
        return stream.getvalue()

    def render(self, format_="text"):
        if format_ == "text":
            return self.to_text()
        elif format_ == "csv":
            return self.to_csv()

        raise NotImplementedError(format_)
