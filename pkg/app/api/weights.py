import argparse

from api.dependencies import add_instance_options, add_output_options, emit, emit_model, require
from core.errors import EXIT_OK
from engine.clifford import IdempotentSpec
from engine.lie import (
    classify_direct,
    classify_idempotent,
    enumerate_idempotents,
    expected_hwv_count,
    hwv_count,
)
from engine.scalar_field import fstr
from verify.schemas import CliConfig, HwvCount, OutputFormat, WeightReport


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("weights", help="weight and classification of g_k F")
    add_instance_options(parser, spec=True)
    parser.add_argument("--enumerate", action="store_true", help="classify every spec of dimension m")
    add_output_options(parser, (OutputFormat.text, OutputFormat.json))
    parser.set_defaults(handler=handle_weights)

    parser = subparsers.add_parser("hwv-count", help="number of highest weight vectors of each kind")
    add_instance_options(parser)
    add_output_options(parser, (OutputFormat.text, OutputFormat.json))
    parser.set_defaults(handler=handle_hwv_count)


def weight_report(spec: IdempotentSpec, k: int, m: int) -> WeightReport:
    kind, weight = classify_direct(spec, k, m)
    return WeightReport(
        spec=str(spec),
        m=m,
        k=k,
        weight=None if weight is None else [fstr(w) for w in weight],
        classification=classify_idempotent(spec, k, m).value,
        direct=kind.value,
    )


def render_weight(report: WeightReport) -> str:
    weight = "(" + ", ".join(report.weight) + ")" if report.weight else "not a weight vector"
    return f"{report.spec}  k={report.k}  weight {weight}  parity rule: {report.classification}  direct: {report.direct}"


def handle_weights(config: CliConfig) -> int:
    m = require(config.m, "--m")
    k = config.k if config.k is not None else 0
    if config.enumerate:
        reports = [weight_report(spec, k, m) for spec in enumerate_idempotents(m)]
        if config.out is OutputFormat.json:
            emit(config, "[\n" + ",\n".join(r.model_dump_json(indent=2) for r in reports) + "\n]")
        else:
            emit(config, "\n".join(render_weight(r) for r in reports))
        return EXIT_OK

    spec = IdempotentSpec.parse(require(config.spec, "--spec"), m)
    report = weight_report(spec, k, m)
    emit_model(config, report, lambda: render_weight(report))
    return EXIT_OK


def handle_hwv_count(config: CliConfig) -> int:
    m = require(config.m, "--m")
    k = config.k if config.k is not None else 0
    plus, minus = hwv_count(m, k)
    report = HwvCount(m=m, k=k, plus=plus, minus=minus, expected=expected_hwv_count(m))
    emit_model(config, report, lambda: f"m={m} k={k}: {plus} plus, {minus} minus (expected {report.expected} per kind)")
    return EXIT_OK
