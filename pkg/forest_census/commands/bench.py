from __future__ import annotations

import argparse
import logging
import time
from typing import Callable, List, TextIO, Tuple

from forest_census.commands.common import add_format_argument
from forest_census.config import Config
from forest_census.errors import InvalidInputError
from forest_census.graph.models import PartSizes, build_complete_multipartite
from forest_census.services.closed_form import tripartite_tree_count
from forest_census.services.oracles import spanning_tree_count_kirchhoff
from forest_census.services.renderer import RecordRenderer

logger = logging.getLogger(__name__)

BENCH_HEADER = ("size", "method", "nanoseconds")


def best_of(repetitions: int, fn: Callable[[], int]) -> Tuple[int, int]:
    """Fastest wall time in nanoseconds over ``repetitions`` calls, and the last value."""
    best = None
    value = 0
    for _ in range(repetitions):
        started = time.perf_counter_ns()
        value = fn()
        elapsed = time.perf_counter_ns() - started
        best = elapsed if best is None else min(best, elapsed)
    return best or 0, value


class BenchCommand:
    def __init__(self, config: Config):
        self.config = config

    def register(self, subparsers: argparse._SubParsersAction) -> None:
        parser = subparsers.add_parser("bench", help="time closed form against the determinant on K_{s,s,s}")
        parser.add_argument("max_size", type=int)
        parser.add_argument("repetitions", type=int)
        parser.add_argument("--step", type=int, default=1)
        add_format_argument(parser, default="csv")
        parser.set_defaults(handler=self.run)

    def run(self, args: argparse.Namespace, out: TextIO) -> int:
        if args.repetitions < 1:
            raise InvalidInputError("repetitions must be at least 1")
        if args.max_size < 1 or args.step < 1:
            raise InvalidInputError("max_size and --step must be at least 1")

        rows: List[Tuple[int, str, int]] = []
        for size in range(1, args.max_size + 1, args.step):
            parts = PartSizes(size, size, size)
            graph = build_complete_multipartite(parts)
            closed_ns, closed = best_of(args.repetitions, lambda: tripartite_tree_count(parts))
            det_ns, determinant = best_of(args.repetitions, lambda: spanning_tree_count_kirchhoff(graph))
            if closed != determinant:
                logger.error("size %s: closed form %s, determinant %s", size, closed, determinant)
            logger.debug("size %s: closed %sns, determinant %sns", size, closed_ns, det_ns)
            rows.append((size, "closed-form", closed_ns))
            rows.append((size, "determinant", det_ns))

        RecordRenderer(args.format, out).table(BENCH_HEADER, rows)
        return 0


def setup(subparsers: argparse._SubParsersAction, config: Config) -> BenchCommand:
    command = BenchCommand(config)
    command.register(subparsers)
    return command
