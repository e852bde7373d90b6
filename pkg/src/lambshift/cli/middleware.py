from __future__ import annotations

import logging
from typing import Any

import typer

from ..config import RunConfig
from .run import EXIT_OK, run
from .types import CommandHandler, Invocation
from .verbosity import VerbosityParser, configure_logging

_logger = logging.getLogger(__name__)

FORMAT_KEY = "format"
OUT_KEY = "out"
THREADS_KEY = "threads"
VERBOSE_KEY = "verbose"
LOG_LEVEL_KEY = "log_level"


def logging_middleware(next_handler: CommandHandler) -> CommandHandler:
    """Install the stderr log handler at the level chosen by --log-level or -v."""

    def handler(inv: Invocation) -> Any:
        level = inv.state.get(LOG_LEVEL_KEY)
        if level is None:
            level = VerbosityParser().convert(inv.state.get(VERBOSE_KEY), None, inv.context)
        configure_logging(level)
        _logger.debug("log level %s", logging.getLevelName(level))
        return next_handler(inv)

    return handler


def run_middleware(next_handler: CommandHandler) -> CommandHandler:
    """Complete the RunConfig a command returns with the shared options and run it."""

    def handler(inv: Invocation) -> Any:
        result = next_handler(inv)
        if not isinstance(result, RunConfig):
            return result
        config = result.with_output(
            format=inv.state.get(FORMAT_KEY),
            out=inv.state.get(OUT_KEY),
            threads=inv.state.get(THREADS_KEY),
        )
        code = run(config)
        if code != EXIT_OK:
            raise typer.Exit(code)
        return code

    return handler
