from __future__ import annotations

import inspect
from typing import Any, Callable


def signature_of(func: Callable[..., Any]) -> inspect.Signature | None:
    """Return the function's signature or None if it cannot be inspected.

    Honors a callable's ``__signature__`` if set.
    """

    try:
        return inspect.signature(func)
    except (TypeError, ValueError):
        return None


def set_signature(func: Callable[..., Any], sig: inspect.Signature) -> None:
    func.__signature__ = sig


def kw_only_param(name: str, annotation: Any, default: Any) -> inspect.Parameter:
    return inspect.Parameter(
        name,
        kind=inspect.Parameter.KEYWORD_ONLY,
        annotation=annotation,
        default=default,
    )


def is_empty(value: Any) -> bool:
    """True when a value is one of inspect's 'no default' sentinels."""

    return value is inspect.Signature.empty or value is inspect.Parameter.empty
