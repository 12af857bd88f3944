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

"""Stability certificates for monotone systems with time-varying delays."""

from __future__ import absolute_import, division, print_function

from setuptools import find_packages, setup

with open("README.rst") as f:
    readme = f.read()

install_requires = [
    "click>=8.0",
    "Flask>=2.0",
    "inspire-utils>=3.0.0",
    "numpy>=1.22",
    "pyyaml>=6.0,<7.0",
    "scipy>=1.8",
    "werkzeug>=2.0",
]

tests_require = [
    "mock~=3.0,>=3.0.0",
    "pytest-cov~=2.0,>=2.5.1",
    "pytest>=8.3.5",
]

dev_require = [
    "pre-commit>=4.2.0",
]

extras_require = {
    "tests": tests_require,
    "dev": dev_require,
}

extras_require["all"] = []
for reqs in extras_require.values():
    extras_require["all"].extend(reqs)

packages = find_packages(exclude=["docs", "tests"])

setup(
    name="monotone-stability",
    license="GPLv3",
    author="The monostab contributors",
    packages=packages,
    include_package_data=True,
    zip_safe=False,
    platforms="any",
    description=__doc__,
    long_description=readme,
    python_requires=">=3.8",
    install_requires=install_requires,
    tests_require=tests_require,
    extras_require=extras_require,
    entry_points={
        "console_scripts": [
            "monostab = monostab.cli:main",
        ],
    },
    version="0.1.0",
    classifiers=[
        "Development Status :: 4 - Beta",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: GNU General Public License v3 (GPLv3)",
        "Operating System :: OS Independent",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
