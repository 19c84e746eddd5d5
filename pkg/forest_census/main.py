import argparse
import importlib
import logging
import sys
from typing import Optional, Sequence

from forest_census.commands.common import EXIT_INVALID, EXIT_MISMATCH, EXIT_OK  # noqa: F401
from forest_census.config import Config, load_config
from forest_census.errors import ForestCensusError

logger = logging.getLogger(__name__)

COMMAND_MODULES = (
    "forest_census.commands.count",
    "forest_census.commands.verify",
    "forest_census.commands.census",
    "forest_census.commands.sample",
    "forest_census.commands.bench",
)


def setup_logging(level: int) -> None:
    logging.basicConfig(
        level=level,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def create_parser(config: Config) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="forest-census",
        description="Exact spanning tree and rooted forest counts for complete tripartite graphs",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    # Each command module registers its own subparser, like an extension
    for name in COMMAND_MODULES:
        importlib.import_module(name).setup(subparsers, config)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        config = load_config()
    except RuntimeError as exc:
        print(f"forest-census: {exc}", file=sys.stderr)
        return EXIT_INVALID
    setup_logging(config.log_level)

    parser = create_parser(config)
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID

    try:
        return args.handler(args, sys.stdout)
    except ForestCensusError as exc:
        logger.error("%s: %s", args.command, exc)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
