"""Tests for the verification registry, runner, renderers and report models."""

import json

import pytest
from rich.console import Console

from supermoduli.errors import InvalidRamondCountError, WindowError
from supermoduli.models.report import Anchor, CheckResult, CheckStatus, Provenance, ReportDocument
from supermoduli.verification.registry import CheckContext, CheckRegistry, CheckSpec, Outcome, get_suite
from supermoduli.verification.render import OutputFormat, render, render_json_lines
from supermoduli.verification.runner import SuiteRequest, plan, run_check, run_suite


def _result(check_id: str, status: CheckStatus, n_r: int | None = 4) -> CheckResult:
    return CheckResult(
        check_id=check_id,
        n_r=n_r,
        anchor=Anchor(statement="Theorem", quote="a statement"),
        status=status,
        computed="(1|0)",
        expected="(1|0)",
        provenance=Provenance.PAPER,
    )


class TestReportModels:
    """Tests for CheckResult and ReportDocument."""

    def test_summary_counts(self) -> None:
        report = ReportDocument(
            tool_version="1.0.0",
            n_r=[4],
            results=[_result("a", CheckStatus.PASS), _result("b", CheckStatus.FAIL)],
        )
        assert report.summary.total == 2
        assert report.summary.passed == 1
        assert report.summary.failed == 1
        assert not report.ok

    def test_empty_report_is_ok(self) -> None:
        assert ReportDocument(tool_version="1.0.0").ok

    def test_summary_is_serialized(self) -> None:
        report = ReportDocument(tool_version="1.0.0", n_r=[4], results=[_result("a", CheckStatus.PASS)])
        data = json.loads(report.model_dump_json())
        assert data["summary"] == {"total": 1, "passed": 1, "failed": 0}
        assert data["results"][0]["status"] == "pass"
        assert data["results"][0]["provenance"] == "paper"
        assert data["results"][0]["anchor"] == {"statement": "Theorem", "quote": "a statement"}


class TestRegistry:
    """Tests for check registration and selection."""

    def test_registration_order(self) -> None:
        registry = CheckRegistry("test")

        @registry.check("first", statement="x", quote="q")
        def first(ctx: CheckContext) -> Outcome:
            return Outcome(True, 1, 1)

        @registry.check("second", statement="y", quote="q", per_nr=False)
        def second(ctx: CheckContext) -> Outcome:
            return Outcome(True, 2, 2)

        assert registry.ids() == ["first", "second"]
        assert [s.check_id for s in registry.select(["second", "first"])] == ["first", "second"]

    def test_duplicate_id(self) -> None:
        registry = CheckRegistry("test")
        registry.check("only", statement="x", quote="q")(lambda ctx: Outcome(True, 0, 0))
        with pytest.raises(ValueError, match="registered twice"):
            registry.check("only", statement="x", quote="q")(lambda ctx: Outcome(True, 0, 0))

    def test_unknown_selection(self) -> None:
        with pytest.raises(KeyError, match="nope"):
            get_suite().select(["nope"])

    def test_suite_covers_acceptance_checks(self) -> None:
        ids = get_suite().ids()
        for check_id in [
            "tangent-h1-table",
            "tangent-h1-basis",
            "euler-sequence",
            "group-dimensions",
            "deformation-round-trip",
            "hypersurface",
            "stabilizer",
            "superconformal",
            "moduli-dimension",
            "gauge-fix",
            "discriminant",
        ]:
            assert check_id in ids

    def test_every_check_is_anchored(self) -> None:
        """Each check names the statement it reproduces and quotes it."""
        for spec in get_suite().select():
            assert spec.anchor.statement.strip(), spec.check_id
            assert spec.anchor.quote.strip(), spec.check_id

    def test_anchor_text(self) -> None:
        assert str(Anchor(statement="Theorem", quote="a statement")) == 'Theorem, "a statement"'


class TestRunCheck:
    """Tests for running a single check."""

    def _spec(self, func) -> CheckSpec:
        return CheckSpec("sample", Anchor(statement="Theorem", quote="a statement"), Provenance.DERIVED, func)

    def test_pass(self) -> None:
        result = run_check(self._spec(lambda ctx: Outcome(True, ctx.n_r, 4)), CheckContext(4))
        assert result.status == CheckStatus.PASS
        assert result.failure_class is None
        assert result.computed == "4"
        assert result.wall_time is None

    def test_mismatch(self) -> None:
        result = run_check(self._spec(lambda ctx: Outcome(False, "(0|1)", "(0|0)")), CheckContext(6))
        assert result.status == CheckStatus.FAIL
        assert result.failure_class == "mismatch"
        assert result.expected == "(0|0)"

    def test_window_error_is_its_own_class(self) -> None:
        def unstable(ctx: CheckContext) -> Outcome:
            raise WindowError("did not stabilize")

        result = run_check(self._spec(unstable), CheckContext(4))
        assert result.status == CheckStatus.FAIL
        assert result.failure_class == "WindowError"
        assert "did not stabilize" in result.computed

    def test_timings(self, monkeypatch: pytest.MonkeyPatch) -> None:
        from supermoduli.config import reset_settings

        monkeypatch.setenv("SUPERMODULI_REPORT_TIMINGS", "true")
        reset_settings()
        result = run_check(self._spec(lambda ctx: Outcome(True, 0, 0)), CheckContext(4))
        assert result.wall_time is not None


class TestRunner:
    """Tests for planning and running the suite."""

    def test_plan_order(self) -> None:
        jobs = plan(SuiteRequest([8, 4], ["group-dimensions", "tangent-h1-table"]))
        assert [(spec.check_id, ctx.n_r) for spec, ctx in jobs] == [
            ("tangent-h1-table", None),
            ("group-dimensions", 4),
            ("group-dimensions", 8),
        ]

    def test_plan_rejects_odd_count(self) -> None:
        with pytest.raises(InvalidRamondCountError):
            plan(SuiteRequest([5]))

    async def test_run_suite(self) -> None:
        report = await run_suite(SuiteRequest([4, 6], ["group-dimensions", "discriminant"]))
        assert report.ok
        assert report.n_r == [4, 6]
        assert [(r.check_id, r.n_r) for r in report.results] == [
            ("discriminant", 4),
            ("discriminant", 6),
            ("group-dimensions", 4),
            ("group-dimensions", 6),
        ]

    async def test_deterministic(self) -> None:
        request = SuiteRequest([4, 6], ["gauge-fix", "group-dimensions"])
        first = await run_suite(request)
        second = await run_suite(request)
        assert first.model_dump_json() == second.model_dump_json()

    @pytest.mark.parametrize("n_r", [4, 6])
    async def test_stabilizer_and_superconformal(self, n_r: int) -> None:
        report = await run_suite(SuiteRequest([n_r], ["stabilizer", "superconformal"]))
        assert report.ok, [r.computed for r in report.results]

    async def test_family_checks(self) -> None:
        report = await run_suite(SuiteRequest([4, 6], ["family-gluing", "deformation-round-trip", "hypersurface"]))
        assert report.ok, [r.computed for r in report.results]

    async def test_moduli_dimension(self) -> None:
        report = await run_suite(SuiteRequest([4, 6], ["moduli-dimension", "euler-sequence"]))
        assert report.ok, [r.computed for r in report.results]


class TestRender:
    """Tests for the report renderers."""

    def _report(self) -> ReportDocument:
        return ReportDocument(
            tool_version="1.0.0",
            n_r=[4],
            results=[_result("a", CheckStatus.PASS), _result("b", CheckStatus.FAIL, None)],
        )

    def test_json_lines(self) -> None:
        lines = render_json_lines(self._report()).splitlines()
        assert len(lines) == 2
        records = [json.loads(line) for line in lines]
        assert [r["check_id"] for r in records] == ["a", "b"]
        assert records[1]["n_r"] is None
        assert set(records[0]) == {
            "check_id",
            "n_r",
            "anchor",
            "status",
            "failure_class",
            "computed",
            "expected",
            "provenance",
            "wall_time",
        }

    def test_table(self) -> None:
        console = Console(record=True, width=200, no_color=True)
        render(self._report(), OutputFormat.TABLE, console)
        text = console.export_text()
        assert "1/2 passed, 1 failed" in text
        assert "(1|0)" in text
