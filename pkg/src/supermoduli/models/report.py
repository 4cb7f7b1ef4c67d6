"""Pydantic models for verification reports."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, computed_field


class Provenance(str, Enum):
    """Where an expected value comes from."""

    PAPER = "paper"  # quoted from the published statement
    TRIVIAL = "trivial"  # follows from the definitions
    DERIVED = "derived"  # worked out independently and cross-checked


class Anchor(BaseModel):
    """The published statement a check reproduces, with a short quote from it."""

    model_config = ConfigDict(frozen=True)

    statement: str
    quote: str

    def __str__(self) -> str:
        return f'{self.statement}, "{self.quote}"'


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"


class CheckResult(BaseModel):
    """Outcome of one check for one puncture count."""

    check_id: str
    n_r: int | None = None
    anchor: Anchor
    status: CheckStatus
    failure_class: str | None = None  # "mismatch" or the name of the error raised
    computed: str = ""
    expected: str = ""
    provenance: Provenance
    wall_time: float | None = None

    @property
    def passed(self) -> bool:
        return self.status == CheckStatus.PASS


class ReportSummary(BaseModel):
    total: int = 0
    passed: int = 0
    failed: int = 0


class ReportDocument(BaseModel):
    """A full suite run, ordered by check registration and then by n_R."""

    tool_version: str
    n_r: list[int] = Field(default_factory=list)
    results: list[CheckResult] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def summary(self) -> ReportSummary:
        passed = sum(1 for r in self.results if r.passed)
        return ReportSummary(total=len(self.results), passed=passed, failed=len(self.results) - passed)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)
