"""Structured logging for the supermoduli CLI.

Events go to stderr so that report output on stdout (table, JSON or JSON
lines) stays machine-readable. Setting ``SUPERMODULI_LOG_FORMAT=json`` switches the
renderer to one JSON object per event.
"""

import logging
import sys

import structlog


def _stderr_logger(*args: object) -> structlog.PrintLogger:
    # Resolved per call so redirected stderr streams are honoured
    return structlog.PrintLogger(file=sys.stderr)


def setup_logging(log_level: str = "WARNING", json_format: bool = False, colors: bool = True) -> None:
    """Configure structlog for a CLI run.

    Called once by the CLI callback from the resolved settings. Library code
    only calls ``get_logger`` and stays silent below WARNING by default.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        json_format: Emit one JSON object per event, for piping stderr into log tooling
        colors: Whether the console renderer may emit ANSI colors
    """
    level = getattr(logging, log_level.upper())

    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=level,
    )

    shared_processors: list[structlog.types.Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.UnicodeDecoder(),
    ]

    if json_format:
        processors = [
            *shared_processors,
            structlog.processors.format_exc_info,
            structlog.processors.JSONRenderer(),
        ]
    else:
        processors = [
            *shared_processors,
            structlog.dev.ConsoleRenderer(colors=colors),
        ]

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.make_filtering_bound_logger(level),
        context_class=dict,
        logger_factory=_stderr_logger,
        cache_logger_on_first_use=False,
    )


def get_logger(name: str | None = None) -> structlog.BoundLogger:
    """Get a module logger; events are rendered per the last ``setup_logging`` call.

    Args:
        name: Logger name (usually __name__)

    Returns:
        Configured structlog logger
    """
    return structlog.get_logger(name)
