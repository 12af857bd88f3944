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

import os

import pytest
from flask import Flask

from monostab import MonotoneStability

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


@pytest.fixture(scope="session")
def app():
    app = Flask(__name__)
    MonotoneStability(app)

    return app


@pytest.fixture(autouse=True)
def app_context(app):
    with app.app_context():
        yield app


@pytest.fixture
def fixture_path():
    def _fixture_path(name):
        return os.path.join(FIXTURES, name)

    return _fixture_path
