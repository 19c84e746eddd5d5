from __future__ import annotations

import argparse
import logging
from typing import TextIO

from forest_census.commands.common import (
    EXIT_MISMATCH,
    EXIT_OK,
    add_format_argument,
    add_parts_arguments,
    parse_parts,
)
from forest_census.config import Config
from forest_census.graph.models import build_complete_multipartite
from forest_census.services.closed_form import total_rooted_forest_count
from forest_census.services.oracles import exhaustive_census
from forest_census.services.renderer import RecordRenderer

logger = logging.getLogger(__name__)

CENSUS_HEADER = ("kind", "l", "k", "r", "count")


class CensusCommand:
    def __init__(self, config: Config):
        self.config = config

    def register(self, subparsers: argparse._SubParsersAction) -> None:
        parser = subparsers.add_parser("census", help="count rooted forests per root profile by brute force")
        add_parts_arguments(parser)
        parser.add_argument("--max-edges", type=int, default=None, help="edge bound (FOREST_CENSUS_MAX_EDGES)")
        parser.add_argument("--workers", type=int, default=1, help="processes for the bitmask sweep")
        add_format_argument(parser)
        parser.set_defaults(handler=self.run)

    def run(self, args: argparse.Namespace, out: TextIO) -> int:
        parts = parse_parts(args)
        max_edges = self.config.census_max_edges if args.max_edges is None else args.max_edges
        graph = build_complete_multipartite(parts)
        census = exhaustive_census(graph, parts, max_edges=max_edges, workers=args.workers)

        total = census.total()
        expected = total_rooted_forest_count(parts)
        mismatch = total != expected
        if mismatch:
            logger.error("census total %s differs from S%s = %s", total, parts.as_tuple(), expected)

        rows = [("profile", profile.l, profile.k, profile.r, str(value)) for profile, value in census.rows()]
        rows.append(("total", None, None, None, str(total)))
        RecordRenderer(args.format, out).table(CENSUS_HEADER, rows)
        return EXIT_MISMATCH if mismatch else EXIT_OK


def setup(subparsers: argparse._SubParsersAction, config: Config) -> CensusCommand:
    command = CensusCommand(config)
    command.register(subparsers)
    return command
