"""Arc polygon boolean script.

Computes intersection, union and difference of circular-arc polygons, generates
random test polygons, renders polygon files as SVG and benchmarks the crossing
search methods against each other.
"""

import argparse
import logging
import sys
from collections.abc import Sequence
from logging.handlers import RotatingFileHandler
from pathlib import Path

import numpy as np

from arc_boolean.bench import run_bench, run_fixture_bench
from arc_boolean.configuration import (
    METHODS,
    BenchConfiguration,
    Configuration,
    ConfigurationError,
    load_configuration_from_file,
    resolve_tolerances,
)
from arc_boolean.errors import ArcBooleanError, ParseError
from arc_boolean.generator import generate_pair, generate_polygon
from arc_boolean.geometry import Tolerances
from arc_boolean.pipeline import Method, PipelineStats, boolean_operation
from arc_boolean.polygon import ArcPolygon, BooleanOperation
from arc_boolean.polygon_file import PolygonFile, load_polygon_file, write_polygon_file
from arc_boolean.render import write_svg

try:
    from importlib.metadata import PackageNotFoundError, version
    __version__ = version("arc-polygon-boolean")
except PackageNotFoundError:
    import tomllib
    with open(Path(__file__).with_name("pyproject.toml"), "rb") as _f:
        __version__ = tomllib.load(_f)["project"]["version"]

logger = logging.getLogger(__name__)

SCRIPT_NAME = "arc_boolean"
CONFIG_FILE = Path(__file__).parent / "config.yaml"
LOG_FILE_SIZE = 100 * 1024  # 100 KB
LOG_BACKUP_COUNT = 10  # Number of backup log files to keep
INTERNAL_ERROR_EXIT_CODE = 3


def configure_logging(log_name: str, debug: bool = False) -> None:
    """Configures logging to use a rotating file handler.

    :param log_name: The name of the log file.
    :param debug: Log at DEBUG instead of INFO.
    """
    log_file = Path(__file__).with_name(f"{log_name}.log")

    file_handler = RotatingFileHandler(
        log_file,
        maxBytes=LOG_FILE_SIZE,
        backupCount=LOG_BACKUP_COUNT,
        encoding="utf-8",
    )
    file_handler.setFormatter(logging.Formatter("%(asctime)s|%(levelname)-7s| %(message)s"))

    console_handler = logging.StreamHandler()
    console_handler.setFormatter(logging.Formatter("%(levelname)-7s| %(message)s"))  # No asctime for console

    logging.basicConfig(
        level=logging.DEBUG if debug else logging.INFO,
        handlers=[file_handler, console_handler],
        force=True,
    )


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"Expected comma separated integers, got '{text}'") from e


def _method_list(text: str) -> list[str]:
    methods = [part for part in text.split(",") if part]
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise argparse.ArgumentTypeError(f"Unknown methods {unknown}, expected a subset of {list(METHODS)}")
    return methods


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per tool."""
    parser = argparse.ArgumentParser(
        description="Boolean operations on circular-arc polygons",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {__version__}",
        help="Show the version and exit.",
    )
    parser.add_argument(
        "--debug",
        action="store_true",
        help="Enable debug logging.",
    )
    parser.add_argument(
        "--config",
        type=Path,
        default=None,
        help=f"Configuration file (default: {CONFIG_FILE.name} next to this script, if present).",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    op = commands.add_parser(
        "op", help="Run a boolean operation.", formatter_class=argparse.ArgumentDefaultsHelpFormatter
    )
    op.add_argument("operation", choices=[o.value for o in BooleanOperation])
    op.add_argument("--a", type=Path, required=True, help="Polygon file with polygon 1, or with both polygons.")
    op.add_argument("--b", type=Path, default=None, help="Polygon file with polygon 2.")
    op.add_argument("--out", type=Path, required=True, help="Result polygon file.")
    op.add_argument("--eps", type=float, default=None, help="Point coincidence tolerance eps_pt.")
    op.add_argument("--normalize", action="store_true", help="Reverse clockwise input polygons.")
    op.add_argument("--method", choices=[m.value for m in Method], default=Method.RE2L.value)
    op.add_argument("--svg", type=Path, default=None, help="Also render inputs and result to this SVG file.")

    gen = commands.add_parser(
        "gen", help="Generate random polygons.", formatter_class=argparse.ArgumentDefaultsHelpFormatter
    )
    gen.add_argument("--n", type=int, required=True, help="Number of edges.")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--arcs", type=float, default=None, help="Share of arc edges (default from configuration).")
    gen.add_argument("--count", type=int, choices=(1, 2), default=1, help="Number of polygons to write.")
    gen.add_argument("--out", type=Path, required=True)

    render = commands.add_parser("render", help="Render polygon files as SVG.")
    render.add_argument("files", type=Path, nargs="+")
    render.add_argument("--out", type=Path, required=True)

    bench = commands.add_parser("bench", help="Benchmark the crossing search methods.")
    bench.add_argument("--sizes", type=_int_list, default=None, help="Comma separated edge counts.")
    bench.add_argument("--trials", type=int, default=None)
    bench.add_argument(
        "--methods", type=_method_list, default=None, help="Comma separated subset of re2l,naive,standard."
    )
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--workers", type=int, default=None)
    bench.add_argument(
        "--op", choices=[o.value for o in BooleanOperation], default=BooleanOperation.INTERSECTION.value
    )
    bench.add_argument(
        "--fixture", type=Path, nargs=2, default=None, metavar=("A", "B"), help="Time one fixed pair instead."
    )
    bench.add_argument("--out", type=Path, default=None, help="CSV report file (default: standard output).")
    return parser


def _load_pair(a: Path, b: Path | None) -> tuple[PolygonFile, PolygonFile | None]:
    doc_a = load_polygon_file(a)
    doc_b = load_polygon_file(b) if b is not None else None
    expected = 1 if doc_b is not None else 2
    if len(doc_a.polygons) != expected:
        raise ParseError(f"'{a}' holds {len(doc_a.polygons)} polygons, expected {expected}")
    if doc_b is not None and len(doc_b.polygons) != 1:
        raise ParseError(f"'{b}' holds {len(doc_b.polygons)} polygons, expected 1")
    return doc_a, doc_b


def _polygons(doc_a: PolygonFile, doc_b: PolygonFile | None, tol: Tolerances, normalize: bool) -> list[ArcPolygon]:
    polygons = doc_a.to_polygons(tol, normalize)
    if doc_b is not None:
        polygons += doc_b.to_polygons(tol, normalize)
    return polygons


def cmd_op(args: argparse.Namespace, config: Configuration) -> int:
    """Run one boolean operation on two polygons and write the result."""
    doc_a, doc_b = _load_pair(args.a, args.b)
    tol = resolve_tolerances(config, doc_a.tolerances, args.eps)
    p1, p2 = _polygons(doc_a, doc_b, tol, args.normalize)
    stats = PipelineStats()
    result = boolean_operation(p1, p2, args.operation, tol, args.method, stats)
    write_polygon_file(args.out, result.circuits)
    logger.info(
        f"{args.operation}: {len(result.circuits)} circuit(s), area {result.area(tol):.6g}, "
        f"{stats.crossings} crossings, written to '{args.out}'"
    )
    if args.svg is not None:
        write_svg(args.svg, [p1, p2, *result.circuits], config.render, tol)
        logger.info(f"Rendered to '{args.svg}'")
    return 0


def cmd_gen(args: argparse.Namespace, config: Configuration) -> int:
    """Generate one random polygon or a pair and write them."""
    tol = config.tolerances
    if args.count == 2:
        polygons = list(generate_pair(args.n, args.seed, args.arcs, config.generator, tol))
    else:
        polygons = [generate_polygon(args.n, np.random.default_rng(args.seed), args.arcs, config.generator, tol)]
    write_polygon_file(args.out, polygons)
    logger.info(f"Generated {len(polygons)} polygon(s) with {args.n} edges (seed {args.seed}) to '{args.out}'")
    return 0


def cmd_render(args: argparse.Namespace, config: Configuration) -> int:
    """Render polygon files to one SVG document."""
    rings = []
    for path in args.files:
        doc = load_polygon_file(path)
        rings += doc.to_polygons(resolve_tolerances(config, doc.tolerances))
    write_svg(args.out, rings, config.render, config.tolerances)
    logger.info(f"Rendered {len(rings)} polygon(s) to '{args.out}'")
    return 0


def cmd_bench(args: argparse.Namespace, config: Configuration) -> int:
    """Benchmark the methods and write the report."""
    cli = {"sizes": args.sizes, "trials": args.trials, "methods": args.methods, "workers": args.workers}
    overrides = {key: value for key, value in cli.items() if value is not None}
    try:
        bench_config = BenchConfiguration.model_validate(config.bench.model_dump() | overrides)
    except Exception as e:
        raise ConfigurationError(f"Invalid benchmark settings: {e}") from e
    tol = resolve_tolerances(config)
    op = BooleanOperation(args.op)

    if args.fixture is not None:
        doc_a, doc_b = _load_pair(*args.fixture)
        p1, p2 = _polygons(doc_a, doc_b, tol, normalize=False)
        methods = [Method(m) for m in bench_config.methods]
        report = run_fixture_bench(p1, p2, bench_config.trials, methods, op, tol)
    else:
        report = run_bench(bench_config, args.seed, op, config.generator, tol)

    if args.out is not None:
        report.write_csv(args.out)
        logger.info(f"Benchmark report written to '{args.out}'")
    else:
        print(report.to_csv(), end="")
    return 0


COMMANDS = {"op": cmd_op, "gen": cmd_gen, "render": cmd_render, "bench": cmd_bench}


def main(args: Sequence[str] | None = None) -> int:
    """Main function.

    :return: Exit code: 0 for success, 1 for invalid input, 2 for unsupported
        configurations, 3 for internal errors.
    """
    args = build_parser().parse_args(args)

    # Initialize logging
    configure_logging(SCRIPT_NAME, args.debug)

    logger.info(f"{SCRIPT_NAME} {args.command} started.")
    try:
        if args.config is not None:
            config = load_configuration_from_file(args.config)
        else:
            config = load_configuration_from_file(CONFIG_FILE, required=False)
        return COMMANDS[args.command](args, config)
    except ArcBooleanError as e:
        logger.error(f"{e.code}: {e}")
        print(e.code, file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.exception(f"Unexpected error: {e}")
        return INTERNAL_ERROR_EXIT_CODE
    finally:
        logger.info(f"{SCRIPT_NAME} script finished.")


if __name__ == "__main__":
    raise SystemExit(main())
