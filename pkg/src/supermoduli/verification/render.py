"""Report renderers: a rich table for people, JSON for machines."""

from enum import Enum

from rich.console import Console
from rich.markup import escape
from rich.table import Table

from supermoduli.models.report import ReportDocument


class OutputFormat(str, Enum):
    TABLE = "table"
    JSON_LINES = "json-lines"
    JSON = "json"


def render_table(report: ReportDocument, console: Console) -> None:
    table = Table(title=escape(f"supermoduli {report.tool_version}  n_R = {report.n_r}"))
    table.add_column("Check")
    table.add_column("n_R", justify="right")
    table.add_column("Status")
    table.add_column("Computed")
    table.add_column("Expected")
    table.add_column("Source")
    for r in report.results:
        status = "[green]pass[/green]" if r.passed else f"[red]fail[/red] ({r.failure_class})"
        table.add_row(r.check_id, "" if r.n_r is None else str(r.n_r), status, escape(r.computed), escape(r.expected), r.provenance.value)
    console.print(table)
    s = report.summary
    console.print(f"{s.passed}/{s.total} passed, {s.failed} failed")


def render_json_lines(report: ReportDocument) -> str:
    """One JSON record per check result."""
    return "".join(r.model_dump_json() + "\n" for r in report.results)


def render_json(report: ReportDocument) -> str:
    return report.model_dump_json(indent=2) + "\n"


def render(report: ReportDocument, output: OutputFormat, console: Console) -> None:
    if output == OutputFormat.TABLE:
        render_table(report, console)
    elif output == OutputFormat.JSON_LINES:
        console.out(render_json_lines(report), end="", highlight=False)
    else:
        console.out(render_json(report), end="", highlight=False)
