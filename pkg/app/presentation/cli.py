from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict

import click

from ..modules.common.errors import ConfigError, LabError
from ..modules.common.export import dumps
from ..modules.jobs import JobConfig, parse_config, run_job, run_verify

logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_USAGE = 2


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def _read_config(path: str | None) -> str | None:
    if path is None:
        return None
    if path == "-":
        return click.get_text_stream("stdin").read()
    return Path(path).read_text(encoding="utf-8")


def _fail(code: str, message: str, exit_code: int) -> None:
    click.echo(f"error: {code}: {message}", err=True)
    sys.exit(exit_code)


def _load(options: Dict[str, Any], required: bool = True) -> JobConfig | None:
    text = _read_config(options.get("config"))
    overrides = {key: options.get(key) for key in ("preset", "out", "workers", "tol", "inject_corruption")}
    if text is None and not required and options.get("preset") is None:
        return None
    config, errors = parse_config(text if text is not None else {}, overrides)
    if errors:
        for field, message in sorted(errors.items()):
            click.echo(f"error: config_error: {field}: {message}", err=True)
        sys.exit(EXIT_USAGE)
    return config


def job_options(command: Callable) -> Callable:
    decorators = [
        click.option("--config", "config", type=click.Path(exists=True, dir_okay=False, allow_dash=True),
                     help="JSON job document; '-' reads standard input."),
        click.option("--preset", help="Named algebra; replaces the config's algebra."),
        click.option("--out", type=click.Path(file_okay=False), help="Directory for CSV/JSON files."),
        click.option("--workers", type=click.IntRange(1, 64), help="Worker threads for grid points."),
        click.option("--tol", type=click.FloatRange(min=0, min_open=True), help="Series tail tolerance."),
        click.option("-v", "--verbose", is_flag=True, help="Log at DEBUG to stderr."),
        click.option("--inject-corruption", hidden=True),
    ]
    for decorator in reversed(decorators):
        command = decorator(command)
    return command


def _run(command: str, options: Dict[str, Any]) -> None:
    _configure_logging(options.get("verbose", False))
    config = _load(options)
    try:
        report = run_job(command, config)
    except ConfigError as exc:
        _fail(exc.code, exc.message, EXIT_USAGE)
    except LabError as exc:
        _fail(exc.code, exc.message, EXIT_FAILURE)
    click.echo(dumps(report), nl=False)


@click.group(name="lab")
def lab() -> None:
    """Coherent states of polynomially deformed su(1,1) and su(2) algebras."""


@lab.command()
@job_options
def derive(**options: Any) -> None:
    """Structure polynomial f, telescoped g and Casimir values."""
    _run("derive", options)


@lab.command()
@job_options
def rep(**options: Any) -> None:
    """Ladder table and truncated operator matrices of the lowest-weight module."""
    _run("rep", options)


@lab.command()
@job_options
def vacua(**options: Any) -> None:
    """Candidate lowest weights, their shifts and the dual vacua."""
    _run("vacua", options)


@lab.command()
@job_options
def cs(**options: Any) -> None:
    """Coherent states over the parameter grid."""
    _run("cs", options)


@lab.command()
@job_options
def moments(**options: Any) -> None:
    """Moment sequence, checked against the preset's radial density."""
    _run("moments", options)


@lab.command("realization-check")
@job_options
def realization_check(**options: Any) -> None:
    """Closure, conservation, vacua and module oracle in a Fock sector."""
    _run("realization-check", options)


@lab.command()
@job_options
def verify(**options: Any) -> None:
    """Invariant suite; without a config every shipped preset is checked."""
    _configure_logging(options.get("verbose", False))
    config = _load(options, required=False)
    try:
        report = run_verify(config, options.get("inject_corruption"))
    except ConfigError as exc:
        _fail(exc.code, exc.message, EXIT_USAGE)
    except LabError as exc:
        _fail(exc.code, exc.message, EXIT_FAILURE)
    click.echo(dumps(report), nl=False)
    if not report["passed"]:
        for name in report["failed"]:
            click.echo(f"error: invariant_failed: {name}", err=True)
        sys.exit(EXIT_FAILURE)
