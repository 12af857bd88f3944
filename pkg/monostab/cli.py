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

"""Command line interface.

Exit status is 0 when every verdict passes, 1 when one does not and 2 on
errors (unreadable or malformed descriptions, invalid delay laws, failed
integrations).
"""

from __future__ import absolute_import, division, print_function

import functools
import io

import click
from flask import Flask, current_app

from monostab import api
from monostab.core import compile_file
from monostab.errors import MonostabError
from monostab.ext import MonotoneStability
from monostab.reports import Report

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


def create_app():
    app = Flask("monostab")
    MonotoneStability(app)
    return app


def _integration_options(command):
    command = click.option("--rtol", type=float, default=None, help="Relative tolerance.")(command)
    command = click.option("--atol", type=float, default=None, help="Absolute tolerance.")(command)
    command = click.option("--tend", type=float, default=None, help="Integration horizon.")(command)
    return command


def _report_options(command):
    command = click.option("--seed", type=int, default=None, help="Master seed.")(command)
    command = click.option(
        "--format",
        "format_",
        type=click.Choice(["text", "csv"]),
        default=None,
        help="Report format.",
    )(command)
    command = click.option(
        "--out", type=click.Path(dir_okay=False), default=None, help="Also write CSV here."
    )(command)
    return command


def _run(func):
    """Run ``func`` in an application context and turn its outcome into an exit status."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        app = create_app()
        with app.app_context():
            try:
                code = func(*args, **kwargs)
            except MonostabError as e:
                click.echo("error: %s" % e, err=True)
                code = EXIT_ERROR
            except (IOError, OSError) as e:
                click.echo("error: %s" % e, err=True)
                code = EXIT_ERROR
            except Exception as e:
                app.logger.exception("Unexpected failure in %s.", func.__name__)
                click.echo("error: %s" % e, err=True)
                code = EXIT_ERROR
        click.get_current_context().exit(code)

    return wrapper


def _cfg(description, tend, rtol, atol):
    return api.integrator_config(description, t_end=tend, rtol=rtol, atol=atol)


def _emit(reports, format_, out=None):
    format_ = format_ or current_app.config["MONOSTAB_OUTPUT_FORMAT"]
    click.echo("\n".join(report.render(format_) for report in reports), nl=False)
    if out is not None:
        with io.open(out, "w", encoding="utf-8") as stream:
            for report in reports:
                stream.write(report.to_csv())
    return EXIT_PASS if all(report.passed for report in reports) else EXIT_FAIL


@click.group()
def cli():
    """Stability certificates for monotone systems with time-varying delays."""


@cli.command("check-monotone")
@click.argument("config")
@click.option("--grid", type=int, default=None, help="Grid points per axis.")
@_report_options
@_integration_options
@_run
def check_monotone(config, grid, seed, format_, out, tend, rtol, atol):
    """Check cooperativity and order preservation on the working box."""
    description = compile_file(config)
    cfg = _cfg(description, tend if tend is not None else 50.0, rtol, atol)
    reports = api.check_monotone(description, grid=grid, seed=seed, cfg=cfg)
    return _emit(reports, format_, out)


@cli.command()
@click.argument("config")
@click.option(
    "--method",
    type=click.Choice(["path", "w", "linear", "lyapunov", "non-monotone"]),
    default=None,
    help="Certificate to build; chosen from the description by default.",
)
@click.option("--grid", type=int, default=None, help="Grid points per axis.")
@click.option("--margin", type=float, default=None, help="Required decrease rate of V.")
@click.option(
    "--emit-lyap",
    type=click.Path(dir_okay=False),
    default=None,
    help="Write the Lyapunov function table here.",
)
@_report_options
@_integration_options
@_run
def certify(config, method, grid, margin, emit_lyap, seed, format_, out, tend, rtol, atol):
    """Certify asymptotic stability and print the region-of-attraction box."""
    description = compile_file(config)
    cfg = _cfg(description, tend, rtol, atol)
    result = api.certify(description, method=method, grid=grid, margin=margin, seed=seed, cfg=cfg)
    reports = [result]
    if result.certified and result.name == "path" and description.psi is not None:
        reports.append(api.check_psi(description, grid=grid, seed=seed, cfg=cfg))
    if emit_lyap is not None and result.lyap is not None:
        result.lyap.to_csv(emit_lyap)
    return _emit(reports, format_, out)


@cli.command()
@click.argument("config")
@click.option("--law", default=None, help="Delay law, e.g. prop:0.5.")
@_report_options
@_integration_options
@_run
def simulate(config, law, seed, format_, out, tend, rtol, atol):
    """Integrate the system and summarise the run.

    The exit status is 0 for every completed run; the summary says whether
    it converged.
    """
    description = compile_file(config)
    cfg = _cfg(description, tend, rtol, atol)
    if law is not None:
        law = api.parse_laws([law])[0]
    trajectory = api.simulate(description, law=law, cfg=cfg)
    if out is not None:
        trajectory.to_csv(out)
    summary = Report(
        "simulation",
        trajectory.status,
        metadata={
            "t_final": trajectory.t_final,
            "t_converge": trajectory.t_converge,
            "terminal": trajectory.terminal,
            "terminal_norm": trajectory.terminal_norm,
            "steps": len(trajectory.times) - 1,
        },
    )
    _emit([summary], format_)
    return EXIT_PASS


def _read_laws(path):
    with io.open(path, encoding="utf-8") as stream:
        lines = [line.split("#", 1)[0].strip() for line in stream]
    return api.parse_laws([line for line in lines if line])


@cli.command()
@click.argument("config")
@click.option(
    "--laws",
    "laws_file",
    type=click.Path(dir_okay=False),
    default=None,
    help="File with one delay law per line.",
)
@_report_options
@_integration_options
@_run
def sweep(config, laws_file, seed, format_, out, tend, rtol, atol):
    """Check box invariance and convergence under a list of delay laws."""
    description = compile_file(config)
    cfg = _cfg(description, tend, rtol, atol)
    laws = _read_laws(laws_file) if laws_file is not None else None
    report = api.sweep(description, laws=laws, cfg=cfg)
    return _emit([report], format_, out)


@cli.command()
@click.argument("config")
@click.option("--grid", type=int, default=None, help="Grid points per axis.")
@click.option("--margin", type=float, default=None, help="Required decrease rate of V.")
@_report_options
@_integration_options
@_run
def construct(config, grid, margin, seed, format_, out, tend, rtol, atol):
    """Build V from the trajectory through w; --out writes its table."""
    description = compile_file(config)
    cfg = _cfg(description, tend, rtol, atol)
    lyap, report = api.construct(description, grid=grid, margin=margin, cfg=cfg)
    if out is not None:
        lyap.to_csv(out)
    return _emit([report], format_)


@cli.command()
@click.argument("config")
@click.option("--law", default=None, help="Delay law of x' = Ax + By(t - tau).")
@_report_options
@_integration_options
@_run
def linear(config, law, seed, format_, out, tend, rtol, atol):
    """Report on the positive linear system given by A (and B)."""
    description = compile_file(config)
    cfg = _cfg(description, tend, rtol, atol)
    if law is not None:
        law = api.parse_laws([law])[0]
    reports = api.linear(description, law=law, seed=seed, cfg=cfg)
    return _emit(reports, format_, out)


def main():
    cli(prog_name="monostab")

