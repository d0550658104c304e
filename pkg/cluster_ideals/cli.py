"""
Command-line front end.

    cluster-ideals compute --surface pentagon --path "path p=v2 q=v5 cross=1,2"
    cluster-ideals hasse   --surface four_punctured_disk --path "..." > poset.dot
    cluster-ideals verify  --surface hexagon --depth 3
    cluster-ideals paths   --surface annulus --max-crossings 4

``--surface`` takes a surface file or the name of a bundled sample.
Exit codes: 0 ok, 1 mismatch or failed computation, 2 invalid input,
3 search budget exhausted.
"""

import argparse
import json
import logging
import os
import sys
from typing import List, Optional

from .arcpath import CrossingPath, enumerate_paths, format_path, parse_path
from .common.config import ENV_LOG_LEVEL
from .common.exceptions import (
    BFSBudgetExceeded,
    ClusterIdealsError,
    ConfigurationError,
    InvalidGeodesicError,
    PathParseError,
    SurfaceParseError,
)
from .shear import expand
from .surface import Triangulation, resolve_surface, sample_names
from .verify import check_theorem

try:
    from dotenv import load_dotenv
except ImportError:  # python-dotenv is optional
    load_dotenv = None

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _apply_log_level(level: Optional[str]) -> None:
    if not level:
        return
    level = level.upper()
    if level not in _LOG_LEVELS:
        logger.warning("Ignoring unknown log level '%s'", level)
        return
    logging.getLogger("cluster_ideals").setLevel(getattr(logging, level))


def _load(args: argparse.Namespace) -> Triangulation:
    return resolve_surface(args.surface)


def _parse_all(T: Triangulation, specs: Optional[List[str]]) -> List[CrossingPath]:
    return [parse_path(T, spec) for spec in specs or []]


# Commands


def _compute_command(args: argparse.Namespace) -> int:
    T = _load(args)
    path = parse_path(T, args.path)
    expansion = expand(T, path)
    rendered = expansion.render(args.coefficient_free)
    if args.json_summary:
        payload = {
            "surface": T.name,
            "path": format_path(T, path),
            "arc": expansion.arc,
            "poset_size": len(expansion.poset),
            **rendered,
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for key in ("g", "F", "x"):
            print(f"{key} = {rendered[key]}")
    return EXIT_OK


def _hasse_command(args: argparse.Namespace) -> int:
    T = _load(args)
    path = parse_path(T, args.path)
    P = expand(T, path).poset
    if args.json_summary:
        print(json.dumps(P.describe(), indent=2, sort_keys=True))
    else:
        print(P.to_dot(), end="")
    return EXIT_OK


def _verify_command(args: argparse.Namespace) -> int:
    if args.budget is not None and args.budget < 1:
        raise ConfigurationError("--budget must be positive", setting="budget", value=args.budget)
    if args.depth is not None and args.depth < 0:
        raise ConfigurationError("--depth must not be negative", setting="depth", value=args.depth)
    T = _load(args)
    paths = _parse_all(T, args.path) if args.path else None
    geodesics = _parse_all(T, args.geodesic)
    report = check_theorem(
        T,
        depth=args.depth,
        paths=paths,
        geodesics=geodesics,
        budget=args.budget,
        tidy=args.tidy,
    )
    if args.json_summary:
        print(report.to_json())
    else:
        for line in report.lines():
            print(line)
    if report.failures:
        return EXIT_MISMATCH
    if report.budget_exhausted:
        return EXIT_BUDGET
    return EXIT_OK


def _paths_command(args: argparse.Namespace) -> int:
    T = _load(args)
    n = 0
    for path in enumerate_paths(T, args.max_crossings, tagged=args.tagged):
        print(format_path(T, path))
        n += 1
    logger.debug("Enumerated %d geodesics on %s", n, T.name)
    return EXIT_OK


# Parsers


def _add_surface_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--surface",
        required=True,
        help="Surface file, or one of the bundled samples: " + ", ".join(sample_names()),
    )


def _add_compute_args(parser: argparse.ArgumentParser) -> None:
    _add_surface_arg(parser)
    parser.add_argument("--path", required=True, help="Path spec, e.g. 'path p=v2 q=v5 cross=1,2'")
    parser.add_argument("--coefficient-free", action="store_true", help="Set every y to 1")
    parser.add_argument("--json-summary", action="store_true", help="Emit a JSON object")
    parser.set_defaults(func=_compute_command)


def _add_hasse_args(parser: argparse.ArgumentParser) -> None:
    _add_surface_arg(parser)
    parser.add_argument("--path", required=True, help="Path spec")
    parser.add_argument("--json-summary", action="store_true", help="Emit elements and covers as JSON")
    parser.set_defaults(func=_hasse_command)


def _add_verify_args(parser: argparse.ArgumentParser) -> None:
    _add_surface_arg(parser)
    parser.add_argument("--depth", type=int, default=None, help="Flip depth of the exploration")
    parser.add_argument("--budget", type=int, default=None, help="Node budget of the flip search")
    parser.add_argument(
        "--path",
        action="append",
        default=None,
        help="Check this arc instead of exploring (repeatable)",
    )
    parser.add_argument(
        "--geodesic",
        action="append",
        default=None,
        help="Structural checks only for this geodesic (repeatable)",
    )
    parser.add_argument("--tidy", action="store_true", help="Also check tile covers and exchange relations")
    parser.add_argument("--json-summary", action="store_true", help="Emit the report as JSON")
    parser.set_defaults(func=_verify_command)


def _add_paths_args(parser: argparse.ArgumentParser) -> None:
    _add_surface_arg(parser)
    parser.add_argument("--max-crossings", type=int, default=3, help="Crossing bound")
    parser.add_argument("--tagged", action="store_true", help="Include notched variants")
    parser.set_defaults(func=_paths_command)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cluster-ideals",
        description="Cluster variables of triangulated surfaces as sums over poset ideals.",
    )
    parser.add_argument("--log-level", default=None, choices=_LOG_LEVELS, help="Override the log level")
    subparsers = parser.add_subparsers(dest="command", required=True)
    _add_compute_args(subparsers.add_parser("compute", help="Print g, F and the cluster variable."))
    _add_hasse_args(subparsers.add_parser("hasse", help="Print the Hasse diagram of the poset."))
    _add_verify_args(subparsers.add_parser("verify", help="Compare with the mutation oracle."))
    _add_paths_args(subparsers.add_parser("paths", help="List combinatorial tagged geodesics."))
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    if load_dotenv is not None:
        load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)
    _apply_log_level(args.log_level or os.getenv(ENV_LOG_LEVEL))
    try:
        return int(args.func(args))
    except BFSBudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (SurfaceParseError, PathParseError, InvalidGeodesicError, ConfigurationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except ClusterIdealsError as e:
        logger.debug("Computation failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    raise SystemExit(main())
