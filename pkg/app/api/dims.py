import argparse
from math import comb

from api.dependencies import add_instance_options, add_output_options, emit_model, require
from core.errors import EXIT_OK, UsageError
from verify.schemas import CliConfig, DimsOut, OutputFormat
from verify.services import dirac_kernel, harmonic_readings, laplacian_kernel

MAX_DIMS_M = 4
MAX_DIMS_K = 3


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("dims", help="kernel dimensions of d and d^2 on degree k")
    add_instance_options(parser)
    add_output_options(parser, (OutputFormat.text, OutputFormat.json))
    parser.set_defaults(handler=handle_dims)


def handle_dims(config: CliConfig) -> int:
    m = require(config.m, "--m")
    k = require(config.k, "--k")
    if m > MAX_DIMS_M or k > MAX_DIMS_K:
        raise UsageError(f"dims supports m <= {MAX_DIMS_M} and k <= {MAX_DIMS_K}")
    printed, alternative = harmonic_readings(m, k)
    report = DimsOut(
        m=m,
        k=k,
        kernel_dirac=dirac_kernel(m, k),
        expected_dirac=4 ** m * comb(k + m - 2, k),
        kernel_laplacian=laplacian_kernel(m, k),
        printed_reading=printed,
        alternative_reading=alternative,
    )
    emit_model(config, report, lambda: (
        f"m={m} k={k}\n"
        f"  dim ker d   = {report.kernel_dirac} (formula {report.expected_dirac})\n"
        f"  dim ker d^2 = {report.kernel_laplacian} (printed reading {printed}, alternative reading {alternative})"
    ))
    return EXIT_OK
