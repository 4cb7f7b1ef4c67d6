"""Command-line entry point: run the verification suite or evaluate fixture expressions."""

import asyncio
from pathlib import Path

import typer
from rich.console import Console

from supermoduli import __version__
from supermoduli.config import ToolkitSettings, get_settings
from supermoduli.errors import InvalidRamondCountError, ParseError, check_ramond_count
from supermoduli.logging import get_logger, setup_logging
from supermoduli.superalgebra.parser import format_poly, parse_poly
from supermoduli.susy.form import SusyForm, parse_susy
from supermoduli.verification.registry import get_suite
from supermoduli.verification.render import OutputFormat, render
from supermoduli.verification.runner import SuiteRequest, run_suite

logger = get_logger(__name__)

app = typer.Typer(help="Exact checks for genus-zero supermoduli with Ramond punctures", no_args_is_help=True)

NR_OPTION = typer.Option(None, "--nr", help="Puncture counts: 6, 4,6,8 or a range 4..12 (step 2)")
CHECK_OPTION = typer.Option(None, "--check", help="Comma-separated check ids (default: all)")
FORMAT_OPTION = typer.Option(OutputFormat.TABLE, "--format", help="table, json-lines or json")
WINDOW_OPTION = typer.Option(None, "--window", min=1, help="Starting Cech window radius")
EXTENDED_OPTION = typer.Option(False, "--extended", help="Also allow the slow puncture counts (n_R = 12)")
SUSY_OPTION = typer.Option(None, "--susy", exists=True, dir_okay=False, help="SUSY form fixture for stabilizer checks")
EXPRESSION_ARGUMENT = typer.Argument(None, help="Fixture text; read from --file or stdin when omitted")
FILE_OPTION = typer.Option(None, "--file", exists=True, dir_okay=False)
ODD_OPTION = typer.Option(None, "--odd", help="Comma-separated odd generators, as an 'odd:' header")


def parse_nr(raw: str) -> list[int]:
    """Expand ``4,6`` and ``4..12`` into validated puncture counts.

    Raises:
        InvalidRamondCountError: If a value is odd or below 4
        ValueError: If a part is not an integer or a range
    """
    values: list[int] = []
    for part in raw.split(","):
        part = part.strip()
        if ".." in part:
            low, _, high = part.partition("..")
            values.extend(range(int(low), int(high) + 1, 2))
        elif part:
            values.append(int(part))
    if not values:
        raise ValueError("no puncture counts given")
    return sorted({check_ramond_count(n) for n in values})


def resolve_nr(raw: str | None, extended: bool, settings: ToolkitSettings) -> list[int]:
    slow = set(settings.get_extended_nr())
    if raw is None:
        return sorted(set(settings.get_default_nr()) | (slow if extended else set()))
    try:
        values = parse_nr(raw)
    except (InvalidRamondCountError, ValueError) as e:
        raise typer.BadParameter(str(e), param_hint="--nr") from e
    guarded = sorted(slow & set(values))
    if guarded and not extended:
        raise typer.BadParameter(f"n_R = {guarded} needs --extended", param_hint="--nr")
    return values


def load_susy(path: Path | None, counts: list[int]) -> SusyForm | None:
    if path is None:
        return None
    try:
        form = parse_susy(path.read_text())
    except (ParseError, InvalidRamondCountError) as e:
        raise typer.BadParameter(f"{path}: {e}", param_hint="--susy") from e
    if form.n_r not in counts:
        raise typer.BadParameter(f"{path} has n_R = {form.n_r}, not among {counts}", param_hint="--susy")
    return form


@app.callback()
def configure(verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr")) -> None:
    """Set up logging from the environment."""
    settings = get_settings()
    setup_logging(
        log_level="DEBUG" if verbose else settings.log_level,
        json_format=settings.log_format.lower() == "json",
        colors=settings.colors_enabled,
    )


@app.command("run")
def run_cmd(
    nr: str | None = NR_OPTION,
    check: str | None = CHECK_OPTION,
    output: OutputFormat = FORMAT_OPTION,
    window: int | None = WINDOW_OPTION,
    extended: bool = EXTENDED_OPTION,
    susy: Path | None = SUSY_OPTION,
) -> None:
    """Run the verification suite and print a report; exit 1 when a check fails."""
    settings = get_settings()
    counts = resolve_nr(nr, extended, settings)
    check_ids = [c.strip() for c in check.split(",") if c.strip()] if check else None
    if check_ids:
        unknown = [c for c in check_ids if c not in get_suite().ids()]
        if unknown:
            raise typer.BadParameter(f"unknown checks: {', '.join(unknown)}", param_hint="--check")
    request = SuiteRequest(counts, check_ids, window, load_susy(susy, counts))
    logger.info("Starting suite", version=__version__, n_r=counts, checks=check_ids)
    report = asyncio.run(run_suite(request))
    render(report, output, Console(no_color=not settings.colors_enabled))
    if not report.ok:
        raise typer.Exit(code=1)


@app.command("eval")
def eval_cmd(
    expression: str | None = EXPRESSION_ARGUMENT,
    file: Path | None = FILE_OPTION,
    odd: str | None = ODD_OPTION,
) -> None:
    """Parse a fixture expression and print it in canonical form."""
    if expression is not None:
        text = expression
    elif file is not None:
        text = file.read_text()
    else:
        text = typer.get_text_stream("stdin").read()
    if odd:
        text = "odd: " + " ".join(n.strip() for n in odd.split(",")) + "\n" + text
    try:
        poly = parse_poly(text)
    except ParseError as e:
        typer.echo(f"parse error: {e}", err=True)
        raise typer.Exit(code=1) from e
    typer.echo(format_poly(poly))


@app.command("list")
def list_cmd() -> None:
    """List the registered checks in report order."""
    for spec in get_suite().select():
        scope = "per n_R" if spec.per_nr else "once"
        typer.echo(f"{spec.check_id}\t{spec.provenance.value}\t{scope}\t{spec.anchor}")


def main() -> None:
    """Run the command-line app."""
    app()


if __name__ == "__main__":
    main()
