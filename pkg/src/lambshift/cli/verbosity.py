import logging
from typing import Any

import click
from rich.console import Console
from rich.logging import RichHandler

_logger = logging.getLogger(__name__)

ROOT_LOGGER = "lambshift"
_HANDLER_NAME = "lambshift-rich"


class VerbosityParser(click.ParamType):
    """Convert a -v count or textual level into a logging level."""

    name = "Verbosity"

    def convert(
        self,
        value: Any,
        parameter: click.Parameter | None,
        ctx: click.Context | None,
    ) -> int:
        _logger.debug("value: %s, %s", value, type(value))
        try:
            return self._coerce_level(value)
        except ValueError as exc:
            self.fail(str(exc), param=parameter, ctx=ctx)

    def _coerce_level(self, value: Any) -> int:
        if value is None:
            return self._level_from_count(0)

        if isinstance(value, str):
            stripped = value.strip()
            if not stripped:
                raise ValueError("log level cannot be empty")
            if stripped.isdigit():
                number = int(stripped)
                if number <= 4:
                    return self._level_from_count(number)
                return number
            levels = logging.getLevelNamesMapping()
            if stripped.upper() in levels:
                return levels[stripped.upper()]
            raise ValueError(f"unknown log level '{value}'")

        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return self._level_from_count(int(value))

        raise ValueError(f"unsupported log level value {value!r}")

    @staticmethod
    def _level_from_count(count: int) -> int:
        if count <= 0:
            return logging.ERROR
        if count == 1:
            return logging.WARNING
        if count == 2:
            return logging.INFO
        return logging.DEBUG


def configure_logging(level: int) -> logging.Logger:
    """Set the package logger level and make sure one rich handler writes to stderr."""

    logger = logging.getLogger(ROOT_LOGGER)
    logger.setLevel(level)
    if not any(handler.get_name() == _HANDLER_NAME for handler in logger.handlers):
        handler = RichHandler(console=Console(stderr=True), show_path=False)
        handler.set_name(_HANDLER_NAME)
        handler.setFormatter(logging.Formatter("%(message)s"))
        logger.addHandler(handler)
    return logger
