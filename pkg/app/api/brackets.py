import argparse

from api.dependencies import add_instance_options, add_output_options, add_sweep_options, emit, require
from core.config import settings
from core.errors import EXIT_OK, UsageError
from engine.lie import bracket_table
from verify.schemas import BracketOut, CliConfig, OutputFormat


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("bracket-table", help="every bracket of the Cartan basis, expanded in that basis")
    add_instance_options(parser)
    add_sweep_options(parser)
    add_output_options(parser, (OutputFormat.text, OutputFormat.json))
    parser.set_defaults(handler=handle_bracket_table)


def handle_bracket_table(config: CliConfig) -> int:
    m = require(config.m, "--m")
    if not 3 <= m <= settings.EXTENSIONAL_MAX_M:
        raise UsageError(f"bracket-table supports 3 <= m <= {settings.EXTENSIONAL_MAX_M}")
    degree = config.max_degree if config.max_degree is not None else settings.MAX_DEGREE
    entries = bracket_table(m, degree)
    if config.out is OutputFormat.json:
        rows = [
            BracketOut(
                left=e.left,
                right=e.right,
                combination=None if e.combination is None else [[name, str(c)] for name, c in e.combination],
            )
            for e in entries
        ]
        emit(config, "[\n" + ",\n".join(r.model_dump_json(indent=2) for r in rows) + "\n]")
    else:
        emit(config, "\n".join(e.render() for e in entries))
    return EXIT_OK
