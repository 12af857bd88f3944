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

"""Stability checker configuration."""

from __future__ import absolute_import, division, print_function

MONOSTAB_GRID = 32
"""Grid points per axis for Jacobian, decrease and path checks."""

MONOSTAB_GRID_CAP = 1000000
"""Largest number of grid points; the per-axis count shrinks to stay below it."""

MONOSTAB_JACOBIAN_TOL = 1e-9
"""Slack for the sign conditions on Jacobian entries."""

MONOSTAB_DECREASE_MARGIN = 1e-9
"""A Lyapunov function must satisfy ``D+V(x) <= -margin * V(x)``."""

MONOSTAB_SEED = 0
"""Master seed of every randomised check."""

MONOSTAB_MONOTONE_TRIALS = 20
"""Ordered pairs integrated by the empirical monotonicity check."""

MONOSTAB_SEARCH_TRIALS = 200
"""Random starting points of the ``w`` search."""

MONOSTAB_D_STABILITY_TRIALS = 100
"""Random positive diagonals tried by the linear D-stability check."""

MONOSTAB_INVARIANCE_TOL = 1e-6
"""Largest allowed excursion of a delayed trajectory above its box."""

MONOSTAB_INTEGRATOR = {
    "rtol": 1e-8,
    "atol": 1e-10,
    "t_end": 200.0,
    "convergence_tol": 1e-6,
    "stall_window": 10.0,
}
"""Integrator settings; a description's ``integrator`` section overrides them."""

MONOSTAB_SWEEP_LAWS = ["zero", "const:2", "sin:1,0.5,1", "prop:0.5"]
"""Delay laws of the sweep when neither the command line nor the description lists any."""

MONOSTAB_CERTIFY_METHODS = {
    "path": "monostab.api:certify_with_path",
    "w": "monostab.api:certify_with_w",
    "linear": "monostab.api:certify_with_matrix",
    "lyapunov": "monostab.api:certify_with_lyapunov",
    "non-monotone": "monostab.api:certify_with_comparison",
}
"""Certification methods by name, as import strings."""

MONOSTAB_DEFAULT_CERTIFY_METHOD = "monostab.api:certify_with_w"
"""The method used when the requested one cannot be imported."""

MONOSTAB_OUTPUT_FORMAT = "text"
"""Report format, ``text`` or ``csv``."""

MONOSTAB_PSI_TRIALS = 10
"""Random starting points of the psi-scaling check."""
