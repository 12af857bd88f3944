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

from monostab.certificates import CERTIFIED, REJECTED, CertificateResult
from monostab.model import BoxSet
from monostab.reports import FAIL, PASS, PRECONDITION, Report, format_value


@pytest.mark.parametrize(
    "value,expected",
    [
        (None, ""),
        (True, "true"),
        (np.bool_(False), "false"),
        (3, "3"),
        (np.int64(3), "3"),
        (0.1 + 0.2, "0.3"),
        (1.0, "1"),
        ([4.0, 2.0], "4 2"),
        (np.array([[1.0, 2.0], [3.0, 4.5]]), "1 2 3 4.5"),
        ("prop:0.5", "prop:0.5"),
    ],
)
def test_format_value(value, expected):
    assert format_value(value) == expected


def test_format_value_with_more_digits():
    assert format_value(0.1 + 0.2, 17) == "0.30000000000000004"


def test_report_passed():
    assert Report("kamke", PASS).passed
    assert not Report("kamke", FAIL).passed
    assert not Report("kamke", PRECONDITION)


def test_report_to_text():
    report = Report("kamke", FAIL, witness={"x": [1.0, 0.5]}, metadata={"grid": 32})

    expected = "check: kamke\nstatus: FAIL\nwitness.x: 1 0.5\ngrid: 32\n"
    result = report.to_text()

    assert expected == result


def test_report_to_text_with_rows():
    report = Report("sweep", PASS, columns=["law_id", "converged"], rows=[["prop:0.5", True]])

    expected = "check: sweep\nstatus: PASS\nlaw_id converged\nprop:0.5 true\n"
    result = report.to_text()

    assert expected == result


def test_report_to_csv():
    report = Report("decrease", PASS, metadata={"margin": 0.1 + 0.2})

    expected = "key,value\ncheck,decrease\nstatus,PASS\nmargin,0.30000000000000004\n"
    result = report.to_csv()

    assert expected == result


def test_report_to_csv_with_rows():
    report = Report("sweep", FAIL, columns=["law_id", "t_converge"], rows=[["zero", None]])

    expected = "law_id,t_converge\nzero,\n"
    result = report.to_csv()

    assert expected == result


def test_report_render_unknown_format():
    with pytest.raises(NotImplementedError):
        Report("kamke", PASS).render("json")


def test_certificate_result():
    certified = CertificateResult("w", CERTIFIED, box=BoxSet([4.0, 2.0]), w=[4.0, 2.0])
    rejected = CertificateResult("w", REJECTED, witness={"component": 1})

    assert certified.passed
    assert certified.certified
    assert "box: 4 2" in certified.to_text()
    assert not rejected.passed
    assert "witness.component: 1" in rejected.to_text()
