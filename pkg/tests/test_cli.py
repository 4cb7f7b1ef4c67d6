"""Tests for the command-line interface."""

import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from supermoduli.config import get_settings
from supermoduli.errors import InvalidRamondCountError
from supermoduli.logging import get_logger, setup_logging
from supermoduli.main import app, parse_nr, resolve_nr

FIXTURES = Path(__file__).parent.parent / "fixtures"

runner = CliRunner()


class TestParseNr:
    """Tests for --nr parsing."""

    def test_single(self) -> None:
        assert parse_nr("6") == [6]

    def test_list_and_range(self) -> None:
        assert parse_nr("4..10") == [4, 6, 8, 10]
        assert parse_nr("8, 4,4") == [4, 8]

    @pytest.mark.parametrize("raw", ["5", "2", "4..9,7"])
    def test_invalid(self, raw: str) -> None:
        with pytest.raises(InvalidRamondCountError):
            parse_nr(raw)

    def test_defaults(self) -> None:
        settings = get_settings()
        assert resolve_nr(None, False, settings) == [4, 6, 8, 10]
        assert resolve_nr(None, True, settings) == [4, 6, 8, 10, 12]


class TestRunCommand:
    """Tests for `supermoduli run`."""

    def test_single_check_json_lines(self) -> None:
        result = runner.invoke(app, ["run", "--nr", "4", "--check", "group-dimensions", "--format", "json-lines"])
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert len(lines) == 1
        record = json.loads(lines[0])
        assert record["check_id"] == "group-dimensions"
        assert record["status"] == "pass"
        assert record["n_r"] == 4

    def test_json_document(self) -> None:
        result = runner.invoke(app, ["run", "--nr", "4,6", "--check", "discriminant", "--format", "json"])
        assert result.exit_code == 0
        document = json.loads(result.stdout)
        assert document["n_r"] == [4, 6]
        assert document["summary"]["passed"] == 2

    def test_stabilizer_fixture(self) -> None:
        """A single CheckResult for the form read from the fixture."""
        result = runner.invoke(
            app,
            ["run", "--check", "stabilizer", "--nr", "6", "--susy", str(FIXTURES / "z6.susy"), "--format", "json-lines"],
        )
        assert result.exit_code == 0
        (line,) = result.stdout.splitlines()
        record = json.loads(line)
        assert record["status"] == "pass"
        assert "z^6" in record["computed"]

    def test_failing_check_exits_nonzero(self) -> None:
        result = runner.invoke(
            app,
            [
                "run",
                "--check",
                "superconformal",
                "--nr",
                "4",
                "--susy",
                str(FIXTURES / "ramified.susy"),
                "--format",
                "json-lines",
            ],
        )
        assert result.exit_code == 1
        (line,) = [text for text in result.stdout.splitlines() if text.startswith("{")]
        record = json.loads(line)
        assert record["status"] == "fail"
        assert record["failure_class"] == "RamifiedDivisorError"

    def test_odd_count_is_usage_error(self) -> None:
        result = runner.invoke(app, ["run", "--nr", "5"])
        assert result.exit_code == 2

    def test_extended_guard(self) -> None:
        result = runner.invoke(app, ["run", "--nr", "12", "--check", "group-dimensions"])
        assert result.exit_code == 2

    def test_unknown_check(self) -> None:
        result = runner.invoke(app, ["run", "--nr", "4", "--check", "nope"])
        assert result.exit_code == 2

    def test_fixture_count_mismatch(self) -> None:
        result = runner.invoke(app, ["run", "--nr", "4", "--susy", str(FIXTURES / "z6.susy")])
        assert result.exit_code == 2

    def test_table(self) -> None:
        result = runner.invoke(app, ["run", "--nr", "4", "--check", "group-dimensions"])
        assert result.exit_code == 0
        assert "1/1 passed, 0 failed" in result.stdout


class TestEvalCommand:
    """Tests for `supermoduli eval`."""

    @pytest.mark.parametrize(
        ("args", "expected"),
        [
            (["--odd", "zeta", "zeta*zeta"], "0"),
            (["--odd", "a,b", "b*a"], "-a*b"),
            (["z^-1 * z"], "1"),
            (["odd: a b\nb*a"], "-a*b"),
        ],
    )
    def test_canonical_form(self, args: list[str], expected: str) -> None:
        result = runner.invoke(app, ["eval", *args])
        assert result.exit_code == 0
        assert result.stdout.strip() == expected

    def test_stdin(self) -> None:
        result = runner.invoke(app, ["eval"], input="2*z + z\n")
        assert result.exit_code == 0
        assert result.stdout.strip() == "3*z"

    def test_parse_error(self) -> None:
        result = runner.invoke(app, ["eval", "z^"])
        assert result.exit_code == 1
        assert "position" in result.output


class TestListCommand:
    def test_lists_every_check(self) -> None:
        result = runner.invoke(app, ["list"])
        assert result.exit_code == 0
        assert "stabilizer" in result.stdout
        assert "tangent-h1-table" in result.stdout


class TestLogging:
    """Tests for the CLI's structured logging."""

    def test_json_events_go_to_stderr(self, capsys: pytest.CaptureFixture[str]) -> None:
        setup_logging(log_level="INFO", json_format=True, colors=False)
        try:
            get_logger("supermoduli.tests").info("Check finished", check_id="sample", n_r=4)
            captured = capsys.readouterr()
        finally:
            setup_logging()
        assert captured.out == ""
        event = json.loads(captured.err.strip().splitlines()[-1])
        assert event["event"] == "Check finished"
        assert event["check_id"] == "sample"
        assert event["level"] == "info"

    def test_level_filters_events(self, capsys: pytest.CaptureFixture[str]) -> None:
        setup_logging(log_level="WARNING", json_format=True, colors=False)
        try:
            get_logger("supermoduli.tests").debug("hidden")
            captured = capsys.readouterr()
        finally:
            setup_logging()
        assert "hidden" not in captured.err
