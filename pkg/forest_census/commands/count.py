from __future__ import annotations

import argparse
import logging
from typing import Callable, Dict, Optional, TextIO

from forest_census.commands.common import add_format_argument, add_parts_arguments, parse_parts
from forest_census.config import Config
from forest_census.errors import InvalidInputError
from forest_census.graph.models import LabeledGraph, PartSizes, build_complete_multipartite
from forest_census.services import oracles
from forest_census.services.closed_form import QUANTITIES, FormulaRequest, evaluate
from forest_census.services.renderer import OutputRecord, RecordRenderer

logger = logging.getLogger(__name__)

OracleFn = Callable[[LabeledGraph, PartSizes, Optional[int]], int]

ORACLES: Dict[str, OracleFn] = {
    "trees": lambda g, parts, r: oracles.spanning_tree_count_kirchhoff(g),
    "rooted-trees": lambda g, parts, r: oracles.forest_count_r_in_part_oracle(g, parts, 1),
    "forests-r": lambda g, parts, r: oracles.forest_count_r_in_part_oracle(g, parts, r or 0),
    "total-forests": lambda g, parts, r: oracles.total_rooted_forest_oracle(g),
}


class CountCommand:
    """Evaluate one closed formula, optionally against its determinant oracle."""

    def __init__(self, config: Config):
        self.config = config

    def register(self, subparsers: argparse._SubParsersAction) -> None:
        parser = subparsers.add_parser("count", help="evaluate a closed-form count")
        parser.add_argument("quantity", choices=QUANTITIES)
        add_parts_arguments(parser)
        parser.add_argument("--r", type=int, default=None, help="roots in H_p (forests-r only)")
        parser.add_argument("--oracle", action="store_true", help="also evaluate the determinant oracle")
        add_format_argument(parser)
        parser.set_defaults(handler=self.run)

    def run(self, args: argparse.Namespace, out: TextIO) -> int:
        parts = parse_parts(args)
        if args.quantity == "forests-r" and args.r is None:
            raise InvalidInputError("forests-r needs --r")
        r = args.r if args.quantity == "forests-r" else None
        value = evaluate(FormulaRequest(parts=parts, r=r), args.quantity)

        oracle_value = None
        if args.oracle:
            graph = build_complete_multipartite(parts)
            oracle_value = ORACLES[args.quantity](graph, parts, r)
            if oracle_value != value:
                logger.error("closed form %s disagrees with oracle %s for %s", value, oracle_value, parts.as_tuple())

        record = OutputRecord.from_counts(args.quantity, parts, r, value, oracle_value)
        RecordRenderer(args.format, out).records([record])
        return 0


def setup(subparsers: argparse._SubParsersAction, config: Config) -> CountCommand:
    command = CountCommand(config)
    command.register(subparsers)
    return command
