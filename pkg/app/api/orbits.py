import argparse

from api.dependencies import add_instance_options, add_output_options, emit, emit_model, require
from core.errors import EXIT_OK
from engine.clifford import IdempotentSpec
from engine.lie import OrbitReport, expected_orbit_dimension, spinor_orbit, weight_str
from engine.scalar_field import fstr
from verify.schemas import CliConfig, OrbitEdgeOut, OrbitOut, OutputFormat


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("spinor-orbit", help="closure of an idempotent under the rotation operators")
    add_instance_options(parser)
    parser.add_argument("--start", "--spec", dest="spec", default=None,
                        help="starting idempotent word (default: all L+)")
    add_output_options(parser, tuple(OutputFormat))
    parser.set_defaults(handler=handle_spinor_orbit)


def orbit_out(orbit: OrbitReport, m: int) -> OrbitOut:
    return OrbitOut(
        start=str(orbit.start),
        m=m,
        dimension=orbit.dimension,
        expected_dimension=expected_orbit_dimension(m),
        nodes=orbit.nodes,
        weights=[None if w is None else [fstr(x) for x in w] for w in orbit.weights],
        edges=[
            OrbitEdgeOut(source=e.source, generator=f"({e.generator[0]},{e.generator[1]})",
                         target=e.target, scalar=str(e.scalar))
            for e in orbit.edges
        ],
        parity_constant=orbit.parity_constant(),
    )


def render_orbit(orbit: OrbitReport, m: int) -> str:
    lines = [f"orbit of {orbit.start} at m={m}: dimension {orbit.dimension} (expected {expected_orbit_dimension(m)})"]
    for node, weight in zip(orbit.nodes, orbit.weights):
        lines.append(f"  {node}  weight {weight_str(weight)}")
    lines.append(f"  minus-sign parities {sorted(orbit.minus_parities())}")
    for edge in orbit.edges:
        lines.append(f"  {edge.source} -> {edge.target}  {edge.label()}")
    return "\n".join(lines)


def handle_spinor_orbit(config: CliConfig) -> int:
    m = require(config.m, "--m")
    start = IdempotentSpec.parse(config.spec, m) if config.spec else IdempotentSpec.uniform(m)
    orbit = spinor_orbit(start, m)
    if config.out is OutputFormat.dot:
        emit(config, orbit.to_dot())
        return EXIT_OK
    emit_model(config, orbit_out(orbit, m), lambda: render_orbit(orbit, m))
    return EXIT_OK
