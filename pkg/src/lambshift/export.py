"""Rendering of command results as one JSON document or one CSV table.

Every float, in CSV and in JSON, carries 17 significant digits, which reads
back to the identical double.
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Mapping, Sequence

from .config import Command, OutputFormat


_FLOAT_TAG = "\x00float17:"
_TAGGED_FLOAT = re.compile(r'"\\u0000float17:([^"]*)"')


def json_number(value: float) -> str:
    text = format(value, ".17g")
    # keep integral values floats on the way back in
    return text if any(mark in text for mark in ".e") else text + ".0"


def csv_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if value is None:
        return ""
    return str(value)


def _json_ready(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, float):
        return _FLOAT_TAG + json_number(value)
    if isinstance(value, Mapping):
        return {key: _json_ready(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_ready(item) for item in value]
    return value


@dataclass(frozen=True)
class CommandOutput:
    """A result both as a JSON document and as a CSV table."""

    document: Mapping[str, Any]
    columns: tuple[str, ...]
    rows: Sequence[Sequence[Any]] = field(default_factory=tuple)
    failure: str | None = None

    def to_json(self) -> str:
        text = json.dumps(_json_ready(self.document), allow_nan=False)
        return _TAGGED_FLOAT.sub(lambda match: match.group(1), text) + "\n"

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([csv_cell(value) for value in row])
        return buffer.getvalue()

    def render(self, fmt: OutputFormat) -> str:
        if OutputFormat(fmt) is OutputFormat.CSV:
            return self.to_csv()
        return self.to_json()


def load_schema(command: Command) -> dict[str, Any]:
    """JSON Schema of a subcommand's JSON output, as shipped in ``lambshift/schemas``."""

    name = f"{Command(command).value}.schema.json"
    text = resources.files("lambshift").joinpath("schemas").joinpath(name).read_text("utf-8")
    return json.loads(text)
