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

"""Stability checker API.

Every function takes a compiled :class:`~monostab.core.SystemDescription`.
Settings that are not passed explicitly are read from ``current_app.config``.
"""

from __future__ import absolute_import, division, print_function

from flask import current_app
from werkzeug.utils import import_string

from monostab.certificates import (
    CERTIFIED,
    INCONCLUSIVE,
    REJECTED,
    CertificateResult,
    certify_by_w,
    certify_linear,
    certify_path,
    check_psi_stability,
    search_w,
)
from monostab.delay import (
    horizon_config,
    roa_under_delay_t1,
    roa_under_delay_t2,
    roa_under_delay_t3,
    sweep_delay_laws,
)
from monostab.errors import (
    ConfigError,
    NoConvergence,
    NonmonotoneComponent,
    NotInOmega,
    UncertifiedLyapunov,
)
from monostab.homogeneity import certify_non_monotone_positive
from monostab.integrators import IntegratorConfig, integrate_dde, integrate_ode
from monostab.linear import check_linear_delay_robustness
from monostab.lyapunov import construct_from_trajectory, verify_decrease
from monostab.model import DelayLaw, InitialHistory
from monostab.monotone import check_assumption2, check_kamke, check_monotone_empirical


def _setting(key, value):
    if value is None:
        current_app.logger.debug(
            "No %s provided. Falling back to the default configuration." % key
        )
        value = current_app.config["MONOSTAB_%s" % key]
    return value


def _get_method(method_param):
    if callable(method_param):
        return method_param

    methods = current_app.config["MONOSTAB_CERTIFY_METHODS"]
    try:
        method = import_string(methods[method_param])
    except (KeyError, ImportError, AttributeError):
        current_app.logger.debug(
            "No certification method %r. Falling back to the default method." % method_param
        )
        method = import_string(current_app.config["MONOSTAB_DEFAULT_CERTIFY_METHOD"])

    return method


def _log_verdict(report):
    current_app.logger.info("%s: %s" % (report.name, report.status))
    return report


def _field(description):
    if description.field is None:
        raise description.error("f", "the description defines no delay-free field")
    return description.field


def _delay_field(description):
    if description.delay_field is None:
        raise description.error("g", "the description defines no delayed field (g, B or h)")
    return description.delay_field


def integrator_config(description=None, **overrides):
    """Integrator settings of ``description`` on top of ``MONOSTAB_INTEGRATOR``.

    Keyword arguments that are not ``None`` override both.

    Raises:
        ConfigError: the merged settings are malformed (e.g. ``t_end <= 0``).
    """
    settings = dict(current_app.config["MONOSTAB_INTEGRATOR"])
    if description is not None:
        settings.update(description.integrator)
    try:
        return IntegratorConfig.from_mapping(settings).replace(**overrides)
    except (KeyError, ValueError) as e:
        raise ConfigError(str(e), getattr(description, "filename", None))


def parse_laws(laws):
    """Turn law strings (``"prop:0.5"``) into :class:`DelayLaw`.

    Raises:
        ConfigError: a law is malformed.
    """
    result = []
    for law in laws:
        if isinstance(law, DelayLaw):
            result.append(law)
            continue
        try:
            result.append(DelayLaw.parse(law))
        except (KeyError, ValueError) as e:
            raise ConfigError(str(e))
    return result


def check_monotone(description, grid=None, tol=None, trials=None, seed=None, cfg=None):
    """Run the cooperativity checks on the working box.

    Returns:
        list(Report): the Kamke check of the delay-free field, the
            Assumption-2 check when the system is delayed, and the empirical
            order-preservation check.
    """
    grid = _setting("GRID", grid)
    tol = _setting("JACOBIAN_TOL", tol)
    trials = _setting("MONOTONE_TRIALS", trials)
    seed = _setting("SEED", seed)
    cap = current_app.config["MONOSTAB_GRID_CAP"]
    field = _field(description)
    box = description.working_box()

    reports = [check_kamke(field, box, grid=grid, tol=tol, cap=cap)]
    if not field.smooth:
        current_app.logger.warning(
            "The field is not smooth; its Jacobian is estimated by finite differences."
        )
    if description.delay_field is not None:
        reports.append(check_assumption2(description.delay_field, box, grid=grid, tol=tol, cap=cap))
    cfg = cfg or integrator_config(description, t_end=50.0)
    reports.append(check_monotone_empirical(field, box, trials=trials, seed=seed, cfg=cfg))
    return [_log_verdict(report) for report in reports]


def _default_method(description):
    if description.path is not None:
        return "path"
    if description.h is not None:
        return "non-monotone"
    if description.A is not None and description.B is None:
        return "linear"
    return "w"


def certify(description, method=None, grid=None, margin=None, seed=None, cfg=None):
    """Certify the origin of ``description`` with the given method.

    ``method`` is a name from ``MONOSTAB_CERTIFY_METHODS`` or a callable with
    the signature of :func:`certify_with_w`; by default it follows from the
    keys the description provides.

    Returns:
        CertificateResult: the verdict.
    """
    if method is None:
        method = _default_method(description)
        current_app.logger.debug("No method provided. Using %r." % method)
    certify_method = _get_method(method)
    result = certify_method(description, grid=grid, margin=margin, seed=seed, cfg=cfg)
    return _log_verdict(result)


def certify_with_path(description, grid=None, margin=None, seed=None, cfg=None):
    """Certify with the description's path.

    A certified path also yields ``V_i = rho_i^{-1}``, whose decrease is
    checked on the certified box.
    """
    if description.path is None:
        raise description.error("path", "the path method needs a path")
    grid = _setting("GRID", grid)
    margin = _setting("DECREASE_MARGIN", margin)
    field = _field(description)
    result = certify_path(field, description.path)
    if result.certified:
        decrease = verify_decrease(result.lyap, field, result.box, grid=2 * grid, margin=margin)
        result.metadata["decrease"] = decrease.status
        result.metadata["mu"] = decrease.mu
    return result


def check_psi(description, trials=None, grid=None, seed=None, cfg=None):
    """Check that the description's ``psi`` scaling keeps the path certificate.

    Returns:
        Report: ``"psi-stability"`` over random points of the path box.

    Raises:
        ConfigError: the description has no ``psi`` or no path.
    """
    if description.psi is None or description.path is None:
        raise description.error("psi", "the psi check needs psi and a path")
    trials = _setting("PSI_TRIALS", trials)
    grid = _setting("GRID", grid)
    seed = _setting("SEED", seed)
    cfg = cfg or integrator_config(description)
    field = _field(description)
    certificate = certify_path(field, description.path)
    if not certificate.certified:
        raise description.error("path", "the path does not certify f: %r" % certificate.witness)
    report = check_psi_stability(
        field,
        description.psi,
        certificate.lyap,
        certificate.box,
        trials=trials,
        seed=seed,
        cfg=cfg,
        grid=grid,
    )
    if report.metadata["kamke"] != "PASS":
        current_app.logger.warning("psi(x, f(x)) fails the Kamke check.")
    return _log_verdict(report)


def _w(description, seed, cfg):
    if description.w is not None:
        return description.w
    trials = current_app.config["MONOSTAB_SEARCH_TRIALS"]
    current_app.logger.debug("No w provided. Searching %d starting points." % trials)
    box = description.working_box()
    return search_w(_field(description), box, trials=trials, seed=seed, cfg=cfg)


def certify_with_w(description, grid=None, margin=None, seed=None, cfg=None):
    """Certify ``[0, w]`` from ``f(w) < 0`` and a converging run from ``w``.

    Without a ``w`` in the description one is searched in the working box.
    """
    seed = _setting("SEED", seed)
    cfg = cfg or integrator_config(description)
    w = _w(description, seed, cfg)
    if w is None:
        witness = {"reason": "no w with f(w) < 0 and a converging run was found"}
        return CertificateResult("w", REJECTED, witness=witness)
    return certify_by_w(_field(description), w, cfg=cfg)


def certify_with_lyapunov(description, grid=None, margin=None, seed=None, cfg=None):
    """Build ``V`` from the trajectory through ``w`` and verify its decrease.

    With a delayed system the result also carries the box that stays
    invariant under every admissible delay (``roa_under_delay``).
    """
    grid = _setting("GRID", grid)
    margin = _setting("DECREASE_MARGIN", margin)
    seed = _setting("SEED", seed)
    cfg = cfg or integrator_config(description)
    field = _field(description)
    w = _w(description, seed, cfg)
    if w is None:
        witness = {"reason": "no w with f(w) < 0 and a converging run was found"}
        return CertificateResult("lyapunov", REJECTED, witness=witness)
    try:
        lyap = construct_from_trajectory(field, w, cfg=cfg)
    except NotInOmega as e:
        return CertificateResult("lyapunov", REJECTED, w=w, witness={"reason": str(e)})
    except (NoConvergence, NonmonotoneComponent) as e:
        return CertificateResult("lyapunov", INCONCLUSIVE, w=w, witness={"reason": str(e)})
    for warning in lyap.warnings:
        current_app.logger.warning(warning)

    decrease = verify_decrease(lyap, field, lyap.box, grid=grid, margin=margin)
    metadata = dict(decrease.metadata, mu=decrease.mu)
    if not decrease.passed:
        return CertificateResult(
            "lyapunov", REJECTED, lyap=lyap, w=w, witness=decrease.witness, metadata=metadata
        )
    if description.delay_field is not None:
        box = roa_under_delay_t1(description.delay_field, lyap, decrease)
        metadata["delay_box"] = box.upper
    return CertificateResult(
        "lyapunov", CERTIFIED, box=lyap.box, lyap=lyap, w=w, metadata=metadata
    )


def certify_with_matrix(description, grid=None, margin=None, seed=None, cfg=None):
    """Certify ``x' = Ax`` (``A + B`` for a delayed linear system)."""
    if description.A is None:
        raise description.error("A", "the linear method needs a matrix A")
    seed = _setting("SEED", seed)
    trials = current_app.config["MONOSTAB_D_STABILITY_TRIALS"]
    matrix = description.A if description.B is None else description.A + description.B
    return certify_linear(matrix, trials=trials, seed=seed)


def _sweep_laws(description, laws):
    if laws is not None:
        return parse_laws(laws)
    if description.sweep_laws:
        return description.sweep_laws
    return parse_laws(_setting("SWEEP_LAWS", None))


def certify_with_comparison(description, grid=None, margin=None, seed=None, cfg=None):
    """Certify ``x' = h(x) + d(y)`` through its monotone comparison field."""
    if description.h is None:
        raise description.error("h", "the non-monotone method needs h and d")
    grid = _setting("GRID", grid)
    seed = _setting("SEED", seed)
    cfg = cfg or integrator_config(description)
    degree = description.dilation.degree if description.dilation is not None else 1.0
    return certify_non_monotone_positive(
        description.h,
        description.d,
        degree,
        description.working_box(),
        _sweep_laws(description, None),
        history=description.history,
        cfg=cfg,
        grid=grid,
        trials=current_app.config["MONOSTAB_SEARCH_TRIALS"],
        seed=seed,
    )


def _initial_history(description):
    if description.history is not None:
        return description.history
    corner = description.corner
    if corner is None:
        raise description.error("history", "the description defines no history, box, w or path")
    current_app.logger.debug("No history provided. Starting from the box corner.")
    return InitialHistory.constant(corner)


def simulate(description, law=None, cfg=None):
    """Integrate the system from its history (the box corner by default).

    Args:
        law (DelayLaw): replaces the description's delay.

    Returns:
        Trajectory: the solution.
    """
    cfg = cfg or integrator_config(description)
    history = _initial_history(description)
    if description.delay_field is None:
        if law is not None and not law.is_zero:
            raise description.error("delay", "a delay law needs a delayed field")
        return integrate_ode(_field(description), history(0.0), cfg)
    field = description.delay_field
    if law is not None:
        field = field.with_law(law)
    current_app.logger.debug("Integrating under %r." % [entry.label for entry in field.all_laws()])
    return integrate_dde(field, history, horizon_config(field, cfg))


def delay_box(description, cfg=None):
    """A box that stays invariant under every admissible delay.

    The description's ``box`` is used when given; otherwise the box follows
    from its path or from its ``w``.

    Raises:
        UncertifiedPath: the path does not certify the delay-free field.
        ConditionFailed: ``w`` does not certify the delay-free field.
    """
    if description.box is not None:
        return description.box
    field = _delay_field(description)
    if description.path is not None:
        return roa_under_delay_t2(field, description.path)
    if description.w is not None:
        return roa_under_delay_t3(field, description.w, cfg or integrator_config(description))
    raise description.error("box", "the description defines no box, w or path")


def sweep(description, laws=None, cfg=None, tol=None):
    """Check box invariance and convergence under each delay law.

    Returns:
        Report: one row per law; a box that cannot be certified is FAIL.
    """
    tol = _setting("INVARIANCE_TOL", tol)
    cfg = cfg or integrator_config(description)
    field = _delay_field(description)
    laws = _sweep_laws(description, laws)
    box = delay_box(description, cfg)
    report = sweep_delay_laws(field, box, laws, history=description.history, cfg=cfg, tol=tol)
    return _log_verdict(report)


def construct(description, grid=None, margin=None, cfg=None):
    """Build ``V`` from the trajectory through ``w`` and verify it.

    Returns:
        tuple: ``(lyap, report)``, the :class:`MaxSepLyap` and its
            :class:`DecreaseReport`.
    """
    grid = _setting("GRID", grid)
    margin = _setting("DECREASE_MARGIN", margin)
    cfg = cfg or integrator_config(description)
    field = _field(description)
    w = description.w if description.w is not None else description.working_box().upper
    lyap = construct_from_trajectory(field, w, cfg=cfg)
    for warning in lyap.warnings:
        current_app.logger.warning(warning)
    report = verify_decrease(lyap, field, lyap.box, grid=grid, margin=margin)
    if description.delay_field is not None and report.passed:
        try:
            box = roa_under_delay_t1(description.delay_field, lyap, report)
            report.metadata["delay_box"] = box.upper
        except UncertifiedLyapunov as e:
            current_app.logger.warning(str(e))
    return lyap, _log_verdict(report)


def linear(description, law=None, seed=None, cfg=None):
    """Positive-system report for the description's matrices.

    Returns:
        list(Report): the certificate of ``A`` (``A + B`` with a delay) and,
            for ``x' = Ax + By(t - tau)``, the delay robustness run.
    """
    if description.A is None:
        raise description.error("A", "the linear report needs a matrix A")
    reports = [certify_with_matrix(description, seed=seed)]
    if description.B is not None:
        law = law or description.law
        cfg = cfg or integrator_config(description)
        reports.append(
            check_linear_delay_robustness(
                description.A, description.B, law, _initial_history(description), cfg=cfg
            )
        )
    return [_log_verdict(report) for report in reports]
