import json
import math

import jsonschema
import pytest

from lambshift.cli.commands import HANDLERS
from lambshift.config import Command
from lambshift.errors import ConvergenceError
from lambshift.export import load_schema
from lambshift.oracle import OracleCheckRow
from lambshift.testing import invoke

SAMPLE_RUNS = {
    Command.SPECTRUM: ["spectrum", "--n", "3", "--twice-j", "3", "--k", "3"],
    Command.DEGENERACY: ["degeneracy", "--n", "40", "--support-mass", "0.99"],
    Command.JSTAR: ["jstar", "--n", "1000"],
    Command.VARIANCE_SCAN: ["variance-scan", "--n", "3", "--k-max", "10"],
    Command.SLOPE: ["slope", "--n", "3", "--k-min", "3", "--k-max", "50"],
    Command.DOS: ["dos", "--n", "4", "--k-max", "3", "--omega-over-g", "50", "--bins", "50"],
    Command.BOUNDS: ["bounds", "--n", "3", "--twice-j", "3", "--k", "3"],
    Command.RWA_CHECK: ["rwa-check", "--n", "20", "--k", "5", "--omega-over-g", "500"],
    Command.ORACLE_CHECK: ["oracle-check", "--n", "4", "--k-max", "3"],
    Command.GAPS: ["gaps", "--n", "5", "--k-max", "4", "--omega-over-g", "100"],
    Command.MOMENT: ["moment", "--n", "3", "--k", "5"],
}


def _json(args):
    result = invoke(args)
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


def test_every_command_output_matches_its_schema():
    for command, args in SAMPLE_RUNS.items():
        document = _json(args)
        jsonschema.validate(document, load_schema(command))


def test_spectrum_json_and_csv():
    document = _json(SAMPLE_RUNS[Command.SPECTRUM])
    outer = math.sqrt(10 + math.sqrt(73))
    assert document["eigenvalues"][-1] == pytest.approx(outer)
    assert len(document["eigenvalues"]) == 4

    result = invoke(SAMPLE_RUNS[Command.SPECTRUM] + ["--format", "CSV"])
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[0] == "eigenvalue"
    assert len(lines) == 5
    assert float(lines[-1]) == pytest.approx(outer)


def test_jstar_reports_exact_argmax():
    document = _json(SAMPLE_RUNS[Command.JSTAR])
    assert document["twice_j_star"] == 30
    assert abs(document["j_star_asymptotic"] - 15) <= 1


def test_variance_scan_three_spins():
    rows = _json(SAMPLE_RUNS[Command.VARIANCE_SCAN])["rows"]
    assert [row["k"] for row in rows] == list(range(11))
    for row in rows[3:]:
        assert row["variance"] == pytest.approx(3 * (row["k"] - 1))


def test_slope_and_moment_values():
    fit = _json(SAMPLE_RUNS[Command.SLOPE])
    assert fit["slope"] == pytest.approx(3.0)
    assert fit["intercept"] == pytest.approx(-3.0)
    assert fit["exact_slope"] == 3.0

    assert _json(SAMPLE_RUNS[Command.MOMENT])["moment"] == pytest.approx(12.0)
    single = _json(["moment", "--n", "3", "--k", "3", "--twice-j", "3", "--order", "4"])
    assert single["moment"] == pytest.approx(173.0)
    assert single["state_count"] == 4


def test_rwa_and_gaps_verdicts():
    assert _json(SAMPLE_RUNS[Command.RWA_CHECK])["valid"] is True
    broken = _json(["rwa-check", "--n", "20", "--k", "40", "--omega-over-g", "100"])
    assert broken["valid"] is False

    gaps = _json(["gaps", "--n", "20", "--k-max", "40", "--omega-over-g", "100"])["rows"]
    assert any(row["gap"] < 0 for row in gaps)


def test_output_is_identical_across_thread_counts():
    for args in (
        SAMPLE_RUNS[Command.DOS],
        ["rwa-check", "--n", "60", "--k", "45", "--omega-over-g", "100"],
        ["moment", "--n", "10", "--k", "8", "--order", "6"],
    ):
        serial = invoke(args + ["--threads", "1"])
        threaded = invoke(args + ["--threads", "4"])
        assert serial.exit_code == threaded.exit_code == 0
        assert serial.stdout == threaded.stdout


def test_threads_from_environment():
    result = invoke(SAMPLE_RUNS[Command.GAPS], env={"LAMBSHIFT_THREADS": "3"})
    assert result.exit_code == 0


def test_out_writes_file(tmp_path):
    target = tmp_path / "spectrum.csv"
    args = SAMPLE_RUNS[Command.SPECTRUM] + ["--format", "csv", "--out", str(target)]
    result = invoke(args)
    assert result.exit_code == 0
    assert result.stdout == ""
    assert target.read_text(encoding="utf-8").startswith("eigenvalue\n")


def test_validation_errors_exit_with_two():
    for args in (
        ["spectrum", "--n", "3", "--twice-j", "2", "--k", "1"],
        ["spectrum", "--n", "0", "--twice-j", "0", "--k", "1"],
        ["dos", "--n", "3", "--k-max", "2", "--omega-over-g", "0"],
        ["moment", "--n", "3", "--k", "2", "--order", "13"],
        ["slope", "--n", "3"],
        ["oracle-check", "--n", "13", "--k-max", "1"],
        ["variance-scan", "--n", "3", "--k-max", "2", "--threads", "0"],
    ):
        result = invoke(args)
        assert result.exit_code == 2, args
        assert "error:" in result.output


def _single_error_line(result):
    lines = result.stderr.strip().splitlines()
    assert len(lines) == 1, result.stderr
    assert lines[0].startswith("error:")
    return lines[0]


def test_missing_required_flag_is_a_usage_error():
    result = invoke(["spectrum", "--n", "3"])
    assert result.exit_code == 2
    assert "--twice-j" in _single_error_line(result)
    assert result.stdout == ""


def test_unknown_flag_is_a_one_line_usage_error():
    result = invoke(SAMPLE_RUNS[Command.SPECTRUM] + ["--bogus"])
    assert result.exit_code == 2
    assert "--bogus" in _single_error_line(result)

    result = invoke(["no-such-command"])
    assert result.exit_code == 2
    assert "no-such-command" in _single_error_line(result)


def test_help_still_exits_cleanly():
    result = invoke(["spectrum", "--help"])
    assert result.exit_code == 0
    assert "--twice-j" in result.stdout


def test_computation_failure_exits_with_one(mocker):
    def fail(config, executor):
        raise ConvergenceError("inverse iteration stalled")

    mocker.patch.dict(HANDLERS, {Command.JSTAR: fail})
    result = invoke(["jstar", "--n", "10"])
    assert result.exit_code == 1
    assert "error: inverse iteration stalled" in result.output


def test_oracle_mismatch_prints_report_and_exits_with_one(mocker):
    mocker.patch(
        "lambshift.cli.commands.check_oracles",
        return_value=[OracleCheckRow(2, "dense", 11, 1e-3, False)],
    )
    result = invoke(["oracle-check", "--n", "4", "--k-max", "2"])
    assert result.exit_code == 1
    assert json.loads(result.stdout)["all_match"] is False
    assert "reference mismatch at k=[2]" in result.output


def test_verbose_flag_is_accepted():
    result = invoke(SAMPLE_RUNS[Command.JSTAR][:1] + ["--n", "10", "-vvv"])
    assert result.exit_code == 0


def test_log_level_accepts_names_and_numbers():
    for level in ("info", "DEBUG", "2", "30"):
        result = invoke(["jstar", "--n", "10", "--log-level", level])
        assert result.exit_code == 0, level
        assert json.loads(result.stdout)["twice_j_star"] == 2


def test_log_level_rejects_unknown_names():
    result = invoke(["jstar", "--n", "10", "--log-level", "bogus"])
    assert result.exit_code == 2
    assert "bogus" in _single_error_line(result)


def test_variance_scan_csv_is_exact_for_small_ensembles():
    result = invoke(["variance-scan", "--n", "3", "--k-max", "6", "--format", "csv"])
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[0] == "k,variance"
    assert lines[1:3] == ["0,0", "1,1.5"]
    assert float(lines[3].split(",")[1]) == 24 / 7
    assert lines[4:] == ["3,6", "4,9", "5,12", "6,15"]
