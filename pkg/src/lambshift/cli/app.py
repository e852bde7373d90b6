from __future__ import annotations

import sys
from typing import Any, Callable

import click
import typer
from typer.core import TyperGroup

from .pipeline import Pipeline
from .setup import get_pipeline

_NoArgsIsHelpError = getattr(click.exceptions, "NoArgsIsHelpError", ())


def _one_line(message: str) -> str:
    return " ".join(message.split())


class LambShiftGroup(TyperGroup):
    """Command group that reports usage errors as a single ``error:`` line on stderr."""

    def main(self, *args: Any, standalone_mode: bool = True, **kwargs: Any) -> Any:
        if not standalone_mode:
            return super().main(*args, standalone_mode=False, **kwargs)
        try:
            rv = super().main(*args, standalone_mode=False, **kwargs)
        except _NoArgsIsHelpError as exc:
            exc.show()
            sys.exit(exc.exit_code)
        except click.ClickException as exc:
            typer.echo(f"error: {_one_line(exc.format_message())}", err=True)
            sys.exit(exc.exit_code)
        except click.exceptions.Abort:
            typer.echo("error: aborted", err=True)
            sys.exit(1)
        # non-standalone click returns typer.Exit codes as plain ints
        sys.exit(rv if isinstance(rv, int) and not isinstance(rv, bool) else 0)


class LambShiftApp(typer.Typer):
    """Typer application whose commands run through a middleware pipeline.

    Commands are registered through ``Pipeline.build`` so the shared options
    and the invoke-time middlewares apply to every subcommand. Without an
    explicit pipeline the module-global one from ``setup`` is used.
    """

    def __init__(self, *, pipeline: Pipeline | None = None, **kwargs: Any):
        kwargs.setdefault("cls", LambShiftGroup)
        super().__init__(**kwargs)
        self._pipeline = pipeline

    @property
    def pipeline(self) -> Pipeline:
        return self._pipeline or get_pipeline()

    def command(self, name: str | None = None, **kwargs: Any) -> Callable[..., Any]:
        base_decorator = super().command(name, **kwargs)
        pipeline = self.pipeline

        def register(func: Callable[..., Any]) -> Callable[..., Any]:
            command_name = name or getattr(func, "__name__", None)
            base_decorator(pipeline.build(func, app=self, name=command_name))
            return func

        return register
