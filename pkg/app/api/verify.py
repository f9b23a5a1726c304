import argparse
import logging

from api.dependencies import (
    add_instance_options,
    add_output_options,
    add_sweep_options,
    emit_model,
    exit_code,
    render_suite,
)
from verify.schemas import CliConfig, OutputFormat
from verify.services import SUITES, run_all, run_suite

log = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("verify", help="run a verification suite, or all of them")
    parser.add_argument("suite", choices=[*SUITES, "all"])
    add_instance_options(parser)
    add_sweep_options(parser)
    add_output_options(parser, (OutputFormat.text, OutputFormat.json))
    parser.set_defaults(handler=handle_verify)


def handle_verify(config: CliConfig) -> int:
    """
    Runs one suite or the whole catalog. Failed checks are reported, never
    raised; the exit code is 1 when any check failed.
    """
    params = config.suite_params()
    if config.suite == "all":
        run = run_all(params)
        emit_model(config, run, lambda: "\n\n".join(render_suite(r) for r in run.reports)
                   + f"\n\ntotal: {run.summary.passed} passed, {run.summary.failed} failed")
        return exit_code(run.reports)

    report = run_suite(config.suite, params)
    emit_model(config, report, lambda: render_suite(report))
    for check in report.failures():
        log.warning("%s failed: %s", check.name, check.witness)
    return exit_code([report])
