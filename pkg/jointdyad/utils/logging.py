"""
Logging configuration for the jointdyad toolkit.
"""

import structlog
import logging
import sys


def configure_logging(log_level: str = "INFO", log_format: str = "console") -> None:
    """
    Configure structured logging for the toolkit.

    Records go to stderr so that tabular output written to stdout
    (``--csv-only``) stays machine readable.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_format: Log format (json or console)
    """
    level = getattr(logging, log_level.upper(), logging.INFO)

    # Configure standard logging
    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=level,
        force=True,
    )

    # Configure structlog
    processors = [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_log_level,
        structlog.stdlib.add_logger_name,
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
    ]

    if log_format == "json":
        processors.append(structlog.processors.JSONRenderer())
    else:
        processors.append(structlog.dev.ConsoleRenderer(colors=False))

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.stdlib.BoundLogger,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=False,
    )



def bind_run_context(command: str, seed: int) -> None:
    """Attach the command and root seed to every record of this run."""
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(command=command, seed=seed)
