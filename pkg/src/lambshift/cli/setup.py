from __future__ import annotations

from pathlib import Path
from typing import Optional

import typer

from ..config import OutputFormat
from ..parallel import THREADS_ENVVAR
from .config import PipelineConfig
from .middleware import (
    FORMAT_KEY,
    OUT_KEY,
    THREADS_KEY,
    LOG_LEVEL_KEY,
    VERBOSE_KEY,
    logging_middleware,
    run_middleware,
)
from .pipeline import Pipeline
from .types import Middleware
from .verbosity import VerbosityParser


def default_config() -> PipelineConfig:
    """Options shared by every subcommand, and the logging and run middlewares."""

    return (
        PipelineConfig()
        .add_middlewares((logging_middleware, run_middleware))
        .add_virtual_option(
            "output_format",
            option=typer.Option(
                OutputFormat.JSON,
                "--format",
                case_sensitive=False,
                help="Output format.",
            ),
            annotation_type=OutputFormat,
            state_key=FORMAT_KEY,
        )
        .add_virtual_option(
            "out",
            option=typer.Option(
                None, "--out", dir_okay=False, help="Write output to a file."
            ),
            annotation_type=Optional[Path],
            state_key=OUT_KEY,
        )
        .add_virtual_option(
            "threads",
            option=typer.Option(
                None,
                "--threads",
                envvar=THREADS_ENVVAR,
                help="Worker threads for scans (default: CPU count).",
            ),
            annotation_type=Optional[int],
            state_key=THREADS_KEY,
        )
        .add_virtual_option(
            "verbose",
            option=typer.Option(
                0,
                "--verbose",
                "-v",
                count=True,
                help="Increase log verbosity (repeat for more detail).",
            ),
            annotation_type=int,
            state_key=VERBOSE_KEY,
        )
        .add_virtual_option(
            "log_level",
            option=typer.Option(
                None,
                "--log-level",
                click_type=VerbosityParser(),
                help="Log level by name (debug, info, ...) or number; overrides -v.",
            ),
            annotation_type=Optional[int],
            state_key=LOG_LEVEL_KEY,
        )
    )


_global_pipeline: Pipeline | None = None
_pipeline_config: PipelineConfig = default_config()


def setup(
    *,
    config: PipelineConfig | None = None,
    middlewares: tuple[Middleware, ...] | None = None,
) -> Pipeline:
    """Create and set the global pipeline (the lambshift defaults unless a config is given)."""
    global _pipeline_config, _global_pipeline

    if config is None:
        config = default_config()
        if middlewares:
            config = config.add_middlewares(middlewares)
    elif middlewares is not None:
        raise ValueError(
            "When providing a PipelineConfig, do not also supply middlewares."
        )

    _pipeline_config = config
    _global_pipeline = _pipeline_config.to_pipeline()
    return _global_pipeline


def get_pipeline() -> Pipeline:
    global _global_pipeline
    if _global_pipeline is None:
        _global_pipeline = _pipeline_config.to_pipeline()
    return _global_pipeline


def get_config() -> PipelineConfig:
    return _pipeline_config
