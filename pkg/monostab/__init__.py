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

from __future__ import absolute_import, division, print_function

from monostab.api import certify, check_monotone, simulate, sweep  # noqa: F401
from monostab.core import compile, compile_file  # noqa: F401
from monostab.ext import MonotoneStability  # noqa: F401

__version__ = "0.1.0"
