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

"""Flask extension installing the stability checker settings."""

from __future__ import absolute_import, division, print_function

from monostab import config

PREFIX = "MONOSTAB_"


class MonotoneStability(object):
    """Install the ``MONOSTAB_*`` defaults of :mod:`monostab.config` on an app.

    Keys the application already set are kept:

    * ``MONOSTAB_GRID``, ``MONOSTAB_GRID_CAP``: grid points per axis and the
      cap on their product.
    * ``MONOSTAB_JACOBIAN_TOL``, ``MONOSTAB_DECREASE_MARGIN``,
      ``MONOSTAB_INVARIANCE_TOL``: slack of the sampled conditions.
    * ``MONOSTAB_SEED`` and the trial counts ``MONOSTAB_MONOTONE_TRIALS``,
      ``MONOSTAB_SEARCH_TRIALS``, ``MONOSTAB_D_STABILITY_TRIALS``,
      ``MONOSTAB_PSI_TRIALS``.
    * ``MONOSTAB_INTEGRATOR``: integrator settings. A partial mapping is
      completed from the defaults.
    * ``MONOSTAB_SWEEP_LAWS``: delay laws swept when none are given.
    * ``MONOSTAB_CERTIFY_METHODS``, ``MONOSTAB_DEFAULT_CERTIFY_METHOD``:
      certification methods as import strings.
    * ``MONOSTAB_OUTPUT_FORMAT``: ``text`` or ``csv``.
    """

    def __init__(self, app=None):
        if app:
            self.init_app(app)

    def init_app(self, app):
        self.init_config(app)
        app.extensions["monostab"] = self

    def init_config(self, app):
        for key in dir(config):
            if key.startswith(PREFIX):
                app.config.setdefault(key, getattr(config, key))
        integrator = dict(config.MONOSTAB_INTEGRATOR)
        integrator.update(app.config["MONOSTAB_INTEGRATOR"] or {})
        app.config["MONOSTAB_INTEGRATOR"] = integrator
