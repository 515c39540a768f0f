"""
Main entry point for weylstrata
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, TextIO

from weylstrata.core.cache import ReductionCache
from weylstrata.core.configuration import PIVOT_ORDERS, ConfigurationService, SweepConfig
from weylstrata.core.service_registry import get_context
from weylstrata.core.system import VerificationSystem
from weylstrata.errors import (
    AlcoveError,
    ConfigurationError,
    ElementError,
    NewtonError,
    ReductionError,
    RootDatumError,
)
from weylstrata.ui.report_writer import (
    FORMATS,
    ReportWriter,
    alcoves_payload,
    bgx_payload,
    classpoly_payload,
    element_payload,
    verify_payload,
)
from weylstrata.utils.serialization import parse_element

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_COUNTEREXAMPLES = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

ELEMENT_COMMANDS = {
    "element": element_payload,
    "bgx": bgx_payload,
    "alcoves": alcoves_payload,
    "classpoly": classpoly_payload,
}


def configure_logging(level: str = "INFO") -> None:
    """Log to stderr; stdout carries the reports."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weylstrata",
        description="Exact computations in extended affine Weyl groups with Frobenius",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    group_flags = argparse.ArgumentParser(add_help=False)
    group_flags.add_argument("--type", dest="cartan_type", help="Cartan type, e.g. A2, C2, A1xA1")
    group_flags.add_argument("--lattice", choices=["sc", "ad", "gl", "basis"], help="Cocharacter lattice")
    group_flags.add_argument("--basis", help="Lattice basis rows in fundamental-coweight coordinates, e.g. '1,0;0,1'")
    group_flags.add_argument("--sigma", help="Frobenius as a 1-based node permutation, e.g. '2,1'")
    group_flags.add_argument("--format", choices=FORMATS, default="json", help="Output format")
    group_flags.add_argument("--cache", dest="cache_path", help="JSON-lines reduction cache")
    group_flags.add_argument("--config", dest="config_file", help="key = value configuration file")
    group_flags.add_argument("--pivot-order", choices=PIVOT_ORDERS, help="Order in which reduction pivots are tried")
    group_flags.add_argument("--use-omega", action="store_true", default=None,
                             help="Allow conjugation by length-zero elements in the orbit search")
    group_flags.add_argument("--no-dimensions", dest="include_dimensions", action="store_false", default=None,
                             help="Skip the dimension tables")
    group_flags.add_argument("--log-level", default="INFO", help="Logging level")

    for command, help_text in (
        ("element", "Canonical form, length, Newton and Kottwitz point of an element"),
        ("bgx", "The classes B(G)_x with their class polynomials"),
        ("alcoves", "Alcove pairs of an element with their condition diagnostics"),
        ("classpoly", "Class polynomials, dimensions and reduction leaves"),
    ):
        sub = subparsers.add_parser(command, parents=[group_flags], help=help_text)
        sub.add_argument("--element", required=True,
                         help='Element literal, e.g. \'{"lambda":[-2],"u":["s"]}\'')
        if command == "alcoves":
            sub.add_argument("--all-pairs", action="store_true",
                             help="Diagnose every σ-stable J with every minimal coset representative w")

    verify = subparsers.add_parser("verify", parents=[group_flags], help="Run verification sweeps")
    verify.add_argument("--checks", help="Comma separated checks (theorem1,corollary,lim,classpoly)")
    verify.add_argument("--max-length", type=int, help="Sweep all elements up to this length")
    verify.add_argument("--workers", type=int, help="Worker processes")
    verify.add_argument("--omega-radius", type=int, help="Bound on the free part of length-zero elements")
    verify.add_argument("--no-runtime", action="store_true",
                        help="Leave cache statistics and timing out of the report")
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {
        "cartan_type": args.cartan_type,
        "lattice": args.lattice,
        "cache_path": args.cache_path,
        "pivot_order": args.pivot_order,
        "use_omega": args.use_omega,
        "include_dimensions": args.include_dimensions,
    }
    for key in ("basis", "sigma"):
        raw = getattr(args, key)
        if raw is not None:
            overrides[key] = ConfigurationService.parse_value(key, raw)
    if args.command == "verify":
        if args.checks is not None:
            overrides["checks"] = ConfigurationService.parse_value("checks", args.checks)
        overrides["max_length"] = args.max_length
        overrides["workers"] = args.workers
        overrides["omega_radius"] = args.omega_radius
    return overrides


def _run_element_command(args: argparse.Namespace, config: SweepConfig, writer: ReportWriter) -> int:
    cache = ReductionCache(config.cache_path)
    context = get_context(config, None, cache)
    x = parse_element(context.group, args.element)
    logger.info(f"Running {args.command} on {context.group.describe(x)}")
    options = {"all_pairs": args.all_pairs} if args.command == "alcoves" else {}
    writer.write(args.command, ELEMENT_COMMANDS[args.command](context, x, **options))
    cache.flush()
    return EXIT_OK


def _run_verify(args: argparse.Namespace, config: SweepConfig, writer: ReportWriter) -> int:
    report = VerificationSystem(config).run()
    writer.write("verify", verify_payload(report, include_runtime=not args.no_runtime))
    return EXIT_OK if report.passed else EXIT_COUNTEREXAMPLES


def run_cli(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None) -> int:
    """
    Run the command line interface.

    Args:
        argv: Arguments without the program name; defaults to sys.argv[1:]
        stdout: Report destination; defaults to sys.stdout

    Returns:
        0 on success, 1 if counterexamples were found, 2 for usage and
        configuration errors, 3 for internal failures
    """
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    configure_logging(args.log_level)
    writer = ReportWriter(stdout, args.format)
    try:
        config = ConfigurationService.build_sweep_config(_overrides(args), args.config_file)
        if args.command == "verify":
            return _run_verify(args, config, writer)
        return _run_element_command(args, config, writer)
    except (ConfigurationError, RootDatumError, ElementError, AlcoveError) as e:
        logger.error(str(e))
        parser.print_usage(sys.stderr)
        print(f"weylstrata: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ReductionError, NewtonError, AssertionError) as e:
        logger.exception(f"Internal failure: {e}")
        dump = {"error": type(e).__name__, "message": str(e),
                "details": getattr(e, "details", None)}
        stdout.write(json.dumps(dump, sort_keys=True, indent=2, default=str) + "\n")
        return EXIT_INTERNAL


def main():
    """Main entry point for the console script."""
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
