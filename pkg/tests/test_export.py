import json
import math

from lambshift.config import Command, OutputFormat
from lambshift.export import CommandOutput, csv_cell, json_number, load_schema


def test_csv_cell_formats():
    assert csv_cell(True) == "true"
    assert csv_cell(False) == "false"
    assert csv_cell(None) == ""
    assert csv_cell(3) == "3"
    assert csv_cell("dense") == "dense"
    assert csv_cell(0.1) == "0.10000000000000001"
    assert float(csv_cell(math.sqrt(2))) == math.sqrt(2)


def test_command_output_renders_json_and_csv():
    output = CommandOutput(
        document={"n": 3, "values": [0.5, math.inf], "ok": True},
        columns=("k", "value"),
        rows=[(1, 0.5), (2, None)],
    )
    text = output.render(OutputFormat.JSON)
    assert text.endswith("\n")
    assert json.loads(text) == {"n": 3, "values": [0.5, None], "ok": True}
    assert output.render("csv") == "k,value\n1,0.5\n2,\n"
    assert output.failure is None


def test_json_floats_read_back_exactly():
    value = 1 / 3
    text = CommandOutput(document={"x": value}, columns=("x",)).to_json()
    assert json.loads(text)["x"] == value


def test_every_command_ships_a_schema():
    for command in Command:
        schema = load_schema(command)
        assert schema["type"] == "object"
        assert schema["additionalProperties"] is False
        assert "n" in schema["required"]


def test_json_floats_carry_seventeen_digits():
    output = CommandOutput(
        document={"x": 0.1, "whole": 6.0, "tiny": 1e-300, "rows": [{"v": -0.5}]},
        columns=("x",),
    )
    text = output.to_json()
    assert '"x": 0.10000000000000001' in text
    assert '"whole": 6.0' in text
    assert '"v": -0.5' in text
    assert "float17" not in text
    document = json.loads(text)
    assert document["x"] == 0.1
    assert isinstance(document["whole"], float)
    assert document["tiny"] == 1e-300


def test_json_number_keeps_floats_round_trip_safe():
    assert json_number(3.0) == "3.0"
    assert json_number(-0.0) == "-0.0"
    assert json_number(1e20) == "1e+20"
    assert float(json_number(math.pi)) == math.pi
