import argparse
import sys
from typing import Callable, Iterable, List

from pydantic import BaseModel, ValidationError

from core.config import settings
from core.errors import EXIT_OK, EXIT_VERIFICATION_FAILED, UsageError
from verify.schemas import CheckStatus, CliConfig, OutputFormat, SuiteReport, SweepMode

Handler = Callable[[CliConfig], int]

# --- Shared options ---

def add_instance_options(parser: argparse.ArgumentParser, spec: bool = False) -> None:
    """--m, --k, and optionally --spec."""
    parser.add_argument("--m", "-m", dest="m", type=int, default=None, help="dimension m >= 2")
    parser.add_argument("--k", "-k", dest="k", type=int, default=None, help="polynomial degree k >= 0")
    if spec:
        parser.add_argument("--spec", default=None, help='idempotent word such as "L+ L- M+ M-"')


def add_sweep_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-degree", type=int, default=None, dest="max_degree",
                        help=f"largest basis degree for operator comparisons (default {settings.MAX_DEGREE})")
    parser.add_argument("--mode", choices=[m.value for m in SweepMode], default=None)
    parser.add_argument("--sample-size", type=int, default=None, dest="sample_size")
    parser.add_argument("--seed", type=int, default=None)


def add_output_options(parser: argparse.ArgumentParser, formats: Iterable[OutputFormat]) -> None:
    parser.add_argument("--out", choices=[f.value for f in formats], default=None, help="output format")
    parser.add_argument("--output", default=None, help="write to this file instead of stdout")


# Dependency: parsed namespace -> validated config
def get_config(args: argparse.Namespace) -> CliConfig:
    values = {
        key: value
        for key, value in vars(args).items()
        if key in CliConfig.model_fields and value is not None
    }
    try:
        return CliConfig(**values)
    except ValidationError as exc:
        problems = "; ".join(f"{'.'.join(map(str, e['loc'])) or 'config'}: {e['msg']}" for e in exc.errors())
        raise UsageError(problems)


def require(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value

# --- Output ---

def emit(config: CliConfig, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if config.output:
        with open(config.output, "w", encoding="utf-8") as handle:
            handle.write(text)
        return
    sys.stdout.write(text)


def emit_model(config: CliConfig, model: BaseModel, render: Callable[[], str]) -> None:
    """JSON through pydantic, text through the given renderer."""
    if config.out is OutputFormat.json:
        emit(config, model.model_dump_json(by_alias=True, indent=2))
    else:
        emit(config, render())


def render_suite(report: SuiteReport) -> str:
    lines = [f"== {report.suite}"]
    for check in report.checks:
        mark = "PASS" if check.status is CheckStatus.passed else "FAIL"
        lines.append(f"  {mark}  {check.name}")
        if check.witness:
            lines.append(f"        witness: {check.witness}")
    lines.append(f"  {report.summary.passed} passed, {report.summary.failed} failed")
    return "\n".join(lines)


def exit_code(reports: List[SuiteReport]) -> int:
    return EXIT_OK if all(r.ok for r in reports) else EXIT_VERIFICATION_FAILED
