"""
Command-line entry point.

Exit codes: 0 success, 1 runtime or numerical failure, 2 usage or
validation error.
"""

import argparse
import sys
from typing import Optional, Sequence

import structlog

from jointdyad import __version__
from jointdyad.cli.commands import COMMANDS
from jointdyad.cli.common import common_flags
from jointdyad.config import settings
from jointdyad.utils.exceptions import ConfigurationError, JointDyadError, ValidationError
from jointdyad.utils.logging import bind_run_context, configure_logging
from jointdyad.utils.validation import validate_log_level


logger = structlog.get_logger(__name__)

EXIT_FAILURE = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jointdyad",
        description="Mixed-membership community model with joint dyad reciprocity",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    parent = common_flags()
    for command in COMMANDS:
        command.register(subparsers, parent)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is not None and args.threads < 1:
        args.parser.error("--threads must be >= 1")

    try:
        if not validate_log_level(settings.logging.log_level):
            raise ConfigurationError(f"unknown log level '{settings.logging.log_level}'")
        configure_logging(
            "WARNING" if args.quiet else settings.logging.log_level,
            settings.logging.log_format,
        )
        bind_run_context(" ".join(filter(None, [args.command, getattr(args, "metric", None)])), args.seed)
        return args.handler(args)
    except (ValidationError, ConfigurationError) as e:
        logger.error("invalid_input", error=str(e))
        print(f"jointdyad: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as e:
        logger.error("input_missing", error=str(e))
        print(f"jointdyad: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except JointDyadError as e:
        logger.error("run_failed", error=str(e), error_type=type(e).__name__)
        print(f"jointdyad: error: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
