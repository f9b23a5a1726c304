import argparse
import logging
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

# Import all command modules
from api import brackets, dims, orbits, verify, weights
from api.dependencies import get_config
from core.config import settings
from core.errors import EXIT_USAGE, EngineError

log = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    """Reports usage problems through the same exit code as every other usage error."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def create_application() -> argparse.ArgumentParser:
    """
    Builds the argument parser and includes every command module.
    """
    application = _Parser(
        prog="spinorcheck",
        description="Exact verification of the so(m) decomposition of discrete spherical monogenics.",
    )
    application.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logs")

    subparsers = application.add_subparsers(dest="command", required=True, parser_class=_Parser)
    verify.register(subparsers)
    weights.register(subparsers)
    orbits.register(subparsers)
    dims.register(subparsers)
    brackets.register(subparsers)
    return application


def configure_logging(verbosity: int) -> None:
    level = {0: settings.LOG_LEVEL, 1: "INFO"}.get(verbosity, "DEBUG")
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = create_application().parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = get_config(args)
        log.info("running %s", config.command)
        return args.handler(config)
    except EngineError as exc:
        log.debug("command failed", exc_info=True)
        sys.stderr.write(f"error: {exc.detail}\n")
        return exc.exit_code
    except ValidationError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
