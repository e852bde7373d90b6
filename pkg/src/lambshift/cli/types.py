from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Protocol

from .signature import signature_of


@dataclass
class InvocationEnvironment:
    """Where a command runs: the Typer app, the command name and the click context."""

    app: Any
    name: str | None = None
    context: Any | None = None


@dataclass
class InvocationCall:
    """Arguments Typer resolved for the current invocation."""

    args: tuple[Any, ...]
    kwargs: dict[str, Any]


@dataclass
class Invocation:
    """Invocation passed through the middleware chain.

    - original: the command function as written
    - target: the function whose signature Typer inspects
    - environment: contextual metadata about the invocation
    - call: positional/keyword arguments Typer resolved
    - state: scratch space shared across middlewares (virtual option values live here)
    """

    original: Callable[..., Any]
    target: Callable[..., Any]
    environment: InvocationEnvironment
    call: InvocationCall
    state: dict[str, Any] = field(default_factory=dict)

    @property
    def app(self) -> Any:
        return self.environment.app

    @property
    def name(self) -> str | None:
        return self.environment.name

    @property
    def context(self) -> Any | None:
        return self.environment.context

    def resolve_call_arguments(self) -> tuple[tuple[Any, ...], dict[str, Any]]:
        """(args, kwargs) for the command function, virtual options removed."""

        virtual_names = set(getattr(self.target, "__lambshift_virtual_param_names__", ()))
        kwargs = {
            name: value
            for name, value in self.call.kwargs.items()
            if name not in virtual_names
        }
        sig = signature_of(self.original)
        if sig is not None and not any(
            param.kind is param.VAR_KEYWORD for param in sig.parameters.values()
        ):
            kwargs = {name: value for name, value in kwargs.items() if name in sig.parameters}
        return self.call.args, kwargs

    def invoke_target(self) -> Any:
        args, kwargs = self.resolve_call_arguments()
        return self.original(*args, **kwargs)


class CommandHandler(Protocol):
    def __call__(self, inv: Invocation) -> Any:  # pragma: no cover - protocol
        ...


class _Middleware(Protocol):
    """Middleware shape: takes next handler, returns a new handler."""

    def __call__(self, next: CommandHandler) -> CommandHandler:  # pragma: no cover
        ...


Middleware = _Middleware | Callable[[CommandHandler], CommandHandler]
