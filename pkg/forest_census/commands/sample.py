from __future__ import annotations

import argparse
import logging
from typing import TextIO

from forest_census.commands.common import add_format_argument, add_parts_arguments, parse_parts
from forest_census.config import Config
from forest_census.errors import InvalidInputError
from forest_census.graph.models import build_complete_multipartite
from forest_census.services.oracles import sample_spanning_trees
from forest_census.services.renderer import RecordRenderer

logger = logging.getLogger(__name__)


class SampleCommand:
    def __init__(self, config: Config):
        self.config = config

    def register(self, subparsers: argparse._SubParsersAction) -> None:
        parser = subparsers.add_parser("sample", help="draw uniform spanning trees rooted at vertex 0")
        add_parts_arguments(parser)
        parser.add_argument("--count", type=int, default=1)
        parser.add_argument("--seed", type=int, default=0)
        add_format_argument(parser)
        parser.set_defaults(handler=self.run)

    def run(self, args: argparse.Namespace, out: TextIO) -> int:
        if args.count < 1:
            raise InvalidInputError("--count must be at least 1")
        parts = parse_parts(args)
        graph = build_complete_multipartite(parts)
        trees = sample_spanning_trees(graph, args.count, args.seed)
        logger.info("sampled %s trees of K_%s with seed %s", len(trees), parts.as_tuple(), args.seed)
        RecordRenderer(args.format, out).table(
            ("index", "parent"), [(index, list(tree.parent)) for index, tree in enumerate(trees)]
        )
        return 0


def setup(subparsers: argparse._SubParsersAction, config: Config) -> SampleCommand:
    command = SampleCommand(config)
    command.register(subparsers)
    return command
