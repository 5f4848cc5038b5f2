"""
Entry point: ``python -m novikov.main <command> [options]``.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from novikov.catalog import Catalog
from novikov.commands import COMMANDS
from novikov.config import CATALOG_PATH, JOBS, LOG_LEVEL, OUT_DIR, RunConfig
from novikov.errors import CatalogError, InadmissibleParameter, ParseError, UnknownSymbol

logging.basicConfig(
    level=getattr(logging, LOG_LEVEL, logging.INFO),
    format="%(asctime)s  %(levelname)-8s  %(name)s — %(message)s",
)
logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2

INPUT_ERRORS = (CatalogError, ValidationError, InadmissibleParameter, ParseError, UnknownSymbol, OSError)


def _types(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--types expects a comma separated list of integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--catalog", default=str(CATALOG_PATH), help="catalog file (default: %(default)s)")
    common.add_argument("--out", default=str(OUT_DIR), help="report directory (default: %(default)s)")
    common.add_argument("--types", type=_types, default=None, help="comma separated types 1..13")
    common.add_argument("--samples", default=None, help="JSON file overriding family sample grids")
    common.add_argument("--format", choices=("text", "json"), default="json")
    common.add_argument("--jobs", type=int, default=JOBS, help="worker processes (default: %(default)s)")

    parser = argparse.ArgumentParser(
        prog="novikov",
        description="Exact audit of the degeneration order of complex 3-dimensional Novikov algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, module in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=module.HELP)
        module.add_arguments(p)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            catalog=args.catalog,
            out_dir=args.out,
            types=args.types,
            samples=args.samples,
            jobs=args.jobs,
            format=args.format,
        )
        catalog = Catalog.load(cfg.catalog, cfg.samples)
        return COMMANDS[args.command].run(cfg, catalog, args)
    except INPUT_ERRORS as e:
        logger.error(f"Input error: {e}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
