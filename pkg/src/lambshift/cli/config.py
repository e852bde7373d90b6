from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Any, Iterable

from typer.models import ParameterInfo

from .types import Middleware

if TYPE_CHECKING:
    from .pipeline import Pipeline


@dataclass(frozen=True)
class VirtualOption:
    """A shared option Typer parses but the command function never receives."""

    name: str
    option: ParameterInfo
    annotation_type: Any = bool
    state_key: str | None = None


@dataclass(frozen=True)
class PipelineConfig:
    """Middlewares and shared options every subcommand is built with.

    Instances are immutable; the ``add_*`` methods return a grown copy so the
    module-global default in :mod:`lambshift.cli.setup` can be swapped
    atomically.
    """

    middlewares: tuple[Middleware, ...] = ()
    virtual_options: tuple[VirtualOption, ...] = field(default_factory=tuple)

    def to_pipeline(self) -> "Pipeline":
        from .pipeline import Pipeline

        pipeline = Pipeline(middlewares=self.middlewares)
        for virtual in self.virtual_options:
            pipeline.add_virtual_option(
                virtual.name,
                option=virtual.option,
                annotation_type=virtual.annotation_type,
                state_key=virtual.state_key,
            )
        return pipeline

    def add_middlewares(self, middlewares: Iterable[Middleware]) -> "PipelineConfig":
        extra = tuple(middlewares)
        if not extra:
            return self
        return replace(self, middlewares=self.middlewares + extra)

    def add_virtual_option(self, name: str, **settings: Any) -> "PipelineConfig":
        virtual = VirtualOption(name, **settings)
        return replace(self, virtual_options=self.virtual_options + (virtual,))
