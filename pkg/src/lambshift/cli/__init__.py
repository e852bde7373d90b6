"""Typer front end: commands build a RunConfig, middlewares finish and run it."""

from .app import LambShiftApp
from .config import PipelineConfig
from .pipeline import Pipeline
from .run import run
from .setup import get_config, get_pipeline, setup
from .types import CommandHandler, Invocation, Middleware

__all__ = [
    "CommandHandler",
    "Invocation",
    "LambShiftApp",
    "Middleware",
    "Pipeline",
    "PipelineConfig",
    "get_config",
    "get_pipeline",
    "run",
    "setup",
]
