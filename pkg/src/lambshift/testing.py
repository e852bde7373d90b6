from __future__ import annotations

from typing import Any, Sequence

from click.testing import Result
from typer.testing import CliRunner

from .cli.app import LambShiftApp
from .cli.pipeline import Pipeline

__all__ = ["TestApp", "invoke", "runner"]

runner = CliRunner()


def invoke(args: Sequence[str], *, raise_ex: bool = True, **kwargs: Any) -> Result:
    """Run the lambshift CLI, re-raising anything other than SystemExit."""

    from .cli.main import app

    result = runner.invoke(app, list(args), **kwargs)
    if raise_ex and result.exception and not isinstance(result.exception, SystemExit):
        raise result.exception
    return result


class TestApp:
    """A LambShiftApp on its own pipeline, for exercising middlewares in isolation."""

    __test__ = False

    def __init__(self, *, pipeline: Pipeline | None = None):
        self.pipeline = pipeline or Pipeline()
        self.app = LambShiftApp(pipeline=self.pipeline)
        self.runner = CliRunner()

    @property
    def command(self):
        return self.app.command

    def invoke(
        self, args: Sequence[str] | None = None, *, raise_ex: bool = True, **kwargs: Any
    ) -> Result:
        result = self.runner.invoke(self.app, list(args or []), **kwargs)
        if raise_ex and result.exception and not isinstance(result.exception, SystemExit):
            raise result.exception
        return result
