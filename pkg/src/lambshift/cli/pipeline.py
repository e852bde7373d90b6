from __future__ import annotations

import inspect
import logging
from dataclasses import dataclass
from functools import wraps
from typing import Any, Callable, Iterable, Sequence

import click
from typer.models import ParameterInfo

from . import signature as sigutil
from .types import (
    CommandHandler,
    Invocation,
    InvocationCall,
    InvocationEnvironment,
    Middleware,
)

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class _VirtualParameter:
    name: str
    parameter: inspect.Parameter
    state_key: str
    default_value: Any


def _apply_virtual_parameters(
    func: Callable[..., Any], params: Sequence[_VirtualParameter]
) -> Callable[..., Any]:
    if not params:
        return func

    sig = sigutil.signature_of(func)
    if sig is None:
        return func
    existing = list(sig.parameters.values())
    names = {param.name for param in existing}

    added: list[str] = []
    for virtual in params:
        if virtual.name in names:
            raise ValueError(
                f"Command parameter '{virtual.name}' clashes with a virtual option."
            )
        existing.append(virtual.parameter)
        added.append(virtual.name)

    @wraps(func)
    def target(*args: Any, **kwargs: Any) -> Any:
        return func(*args, **kwargs)

    sigutil.set_signature(target, sig.replace(parameters=existing))
    target.__lambshift_virtual_param_names__ = tuple(added)
    return target


def _current_context() -> click.Context | None:
    try:
        return click.get_current_context(silent=True)
    except RuntimeError:
        return None


class Pipeline:
    """Invoke-time middleware chain plus options shared by every command.

    - Middlewares wrap each invocation (pre/post), outermost registered first.
    - Virtual options appear on every command's CLI; their values go to
      ``Invocation.state`` instead of the command function.
    """

    def __init__(self, *, middlewares: Iterable[Middleware] | None = None):
        self._middlewares: list[Middleware] = list(middlewares or [])
        self._virtual_params: list[_VirtualParameter] = []

    def add_virtual_option(
        self,
        name: str,
        *,
        option: ParameterInfo,
        annotation_type: Any = bool,
        state_key: str | None = None,
    ) -> "Pipeline":
        """Expose an option to Typer without forwarding it to the command."""

        if any(virtual.name == name for virtual in self._virtual_params):
            raise ValueError(f"Virtual option '{name}' is already registered.")

        parameter = sigutil.kw_only_param(name, annotation_type, option)
        self._virtual_params.append(
            _VirtualParameter(
                name=name,
                parameter=parameter,
                state_key=state_key or f"virtual:{name}",
                default_value=getattr(option, "default", inspect.Signature.empty),
            )
        )
        return self

    def build(
        self,
        func: Callable[..., Any],
        *,
        app: Any = None,
        name: str | None = None,
    ) -> Callable[..., Any]:
        """Return the callable to register with Typer."""

        virtual_params = list(self._virtual_params)
        decorated = _apply_virtual_parameters(func, virtual_params)

        def base(inv: Invocation) -> Any:
            return inv.invoke_target()

        # last registered runs innermost
        handler: CommandHandler = base
        for mw in reversed(self._middlewares):
            handler = mw(handler)

        @wraps(decorated)
        def adapter(*args: Any, **kwargs: Any) -> Any:
            inv = Invocation(
                original=func,
                target=decorated,
                environment=InvocationEnvironment(
                    app=app, name=name, context=_current_context()
                ),
                call=InvocationCall(args=tuple(args), kwargs=dict(kwargs)),
            )
            for virtual in virtual_params:
                value = inv.call.kwargs.get(virtual.name, virtual.default_value)
                inv.state[virtual.state_key] = None if sigutil.is_empty(value) else value
            _logger.debug("invoking %s with state %s", name, inv.state)
            return handler(inv)

        sig = sigutil.signature_of(decorated)
        if sig is not None:
            sigutil.set_signature(adapter, sig)
        return adapter
