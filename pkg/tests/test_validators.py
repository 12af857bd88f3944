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

import numpy as np
import pytest

from monostab.errors import Assumption1Violated, PathDomainError, PathValidationFailure
from monostab.model import DelayLaw, PathCandidate
from monostab.validators import (
    check_assumption1,
    is_assumption1,
    is_class_k_path,
    validate_path,
)


@pytest.mark.parametrize(
    "text,expected",
    [
        ("zero", 0.0),
        ("const:2", 2.0),
        ("sin:1,0.5,1", 1.0),
        ("prop:0.5", 0.0),
        ("expr:1 + t/(t + 1)", 1.0),
    ],
)
def test_check_assumption1_returns_tau_max(text, expected):
    result = check_assumption1(DelayLaw.parse(text))

    assert result == pytest.approx(expected)


@pytest.mark.parametrize(
    "text",
    [
        "prop:1",
        "prop:1.5",
        "sin:1,2",
        "const:-1",
        "expr:t",
        "expr:-1 + 0*t",
        "expr:t - sqrt(t)",
    ],
)
def test_check_assumption1_rejects(text):
    with pytest.raises(Assumption1Violated):
        check_assumption1(DelayLaw.parse(text))


def test_check_assumption1_names_the_law():
    with pytest.raises(Assumption1Violated) as excinfo:
        check_assumption1(DelayLaw.parse("expr:t"))

    assert "expr:t" in str(excinfo.value)


def test_is_assumption1():
    assert is_assumption1(DelayLaw.proportional(0.5))
    assert not is_assumption1(DelayLaw.proportional(1.0))


def test_validate_path_accepts_square_root():
    path = PathCandidate(["s", "sqrt(s)"], 4.0)

    validate_path(path)

    assert is_class_k_path(path)


def test_validate_path_rejects_flat_component():
    path = PathCandidate(["s", "0*s"], 1.0)

    with pytest.raises(PathValidationFailure):
        validate_path(path)

    assert not is_class_k_path(path)


def test_validate_path_domain_error():
    path = PathCandidate(["ln(s)"], 1.0)

    with pytest.raises(PathDomainError):
        validate_path(path)


def test_validate_path_rejects_zero_slope_inside():
    path = PathCandidate(["(s - 1)^3 + 1"], 2.0)

    with pytest.raises(PathValidationFailure) as excinfo:
        validate_path(path, points=1025)

    assert "no positive derivative" in str(excinfo.value)
    assert np.isclose(float(str(excinfo.value).split("s = ")[-1]), 1.0)
