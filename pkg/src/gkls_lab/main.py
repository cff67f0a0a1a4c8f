"""Application entry point - parses the command line and runs one batch command."""

import logging
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from .cli import COMMAND_HANDLERS, EXIT_INVALID, build_arg_parser, config_overrides, resolve_config
from .config import settings
from .exceptions import LabError
from .run_context import RunContextFilter

logger = logging.getLogger(__name__)


def configure_logging(level: Optional[str] = None) -> None:
    """Log to stderr with the current run label on every record."""
    handler = logging.StreamHandler(sys.stderr)
    handler.addFilter(RunContextFilter())
    logging.basicConfig(
        level=(level or settings.log_level).upper(),
        format=settings.log_format,
        handlers=[handler],
        force=True,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code (0 ok, 1 invalid input, 2 partial batch failure)."""
    args = build_arg_parser().parse_args(argv)
    configure_logging(args.log_level)

    try:
        config = resolve_config(args.config, config_overrides(args))
        logger.info(f"Running {args.command} with output directory {config.out}")
        code = COMMAND_HANDLERS[args.command](config)
    except ValidationError as e:
        logger.error(f"Invalid configuration:\n{e}")
        return EXIT_INVALID
    except (LabError, ValueError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_INVALID

    logger.info(f"{args.command} finished with exit code {code}")
    return code


if __name__ == "__main__":
    sys.exit(main())
