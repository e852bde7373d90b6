from __future__ import annotations

import logging

import typer
from scipy.linalg import LinAlgError

from ..config import RunConfig
from ..errors import DomainError, LambShiftError
from ..parallel import scan_executor
from .commands import HANDLERS

_logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_COMPUTATION = 1
EXIT_VALIDATION = 2


def _diagnose(exc: BaseException | str) -> None:
    message = " ".join(str(exc).split()) or type(exc).__name__
    typer.echo(f"error: {message}", err=True)


def run(config: RunConfig) -> int:
    """Execute one configured analysis and write its output; return the exit code."""

    try:
        config = config.validate()
    except DomainError as exc:
        _diagnose(exc)
        return EXIT_VALIDATION

    _logger.debug("running %s", config.describe())
    handler = HANDLERS[config.command]
    try:
        with scan_executor(config.resolved_threads) as executor:
            output = handler(config, executor)
    except DomainError as exc:
        _diagnose(exc)
        return EXIT_VALIDATION
    except (LambShiftError, ArithmeticError, LinAlgError) as exc:
        _logger.debug("computation failed", exc_info=exc)
        _diagnose(exc)
        return EXIT_COMPUTATION

    text = output.render(config.format)
    if config.out is None:
        typer.echo(text, nl=False)
    else:
        try:
            config.out.write_text(text, encoding="utf-8")
        except OSError as exc:
            _diagnose(exc)
            return EXIT_COMPUTATION
        _logger.info("wrote %s output to %s", config.command.value, config.out)

    if output.failure:
        _diagnose(output.failure)
        return EXIT_COMPUTATION
    return EXIT_OK
