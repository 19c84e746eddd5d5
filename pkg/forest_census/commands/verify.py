from __future__ import annotations

import argparse
import logging
from typing import List, Sequence, TextIO

from forest_census.commands.common import EXIT_MISMATCH, EXIT_OK, add_format_argument
from forest_census.config import Config
from forest_census.errors import InvalidInputError, ResourceLimitError
from forest_census.graph.models import PartSizes, build_complete_multipartite
from forest_census.services import closed_form, oracles
from forest_census.services.decomposition import enumerate_constructions
from forest_census.services.exact_math import binomial
from forest_census.services.renderer import OutputRecord, RecordRenderer

logger = logging.getLogger(__name__)

ORACLE_NAMES = ("kirchhoff", "minors", "detLI", "census", "construction")
DEFAULT_ORACLES = "kirchhoff,minors,detLI"


def parse_oracles(raw: str) -> List[str]:
    names = [name.strip() for name in raw.split(",") if name.strip()]
    unknown = [name for name in names if name not in ORACLE_NAMES]
    if unknown:
        raise InvalidInputError(f"unknown oracles {unknown}; choose from {', '.join(ORACLE_NAMES)}")
    return names


class VerifyCommand:
    """Sweep (m, n, p) boxes comparing closed forms, sum forms and oracles."""

    def __init__(self, config: Config):
        self.config = config

    def register(self, subparsers: argparse._SubParsersAction) -> None:
        parser = subparsers.add_parser("verify", help="cross-check formulas against oracles")
        parser.add_argument("max_m", type=int)
        parser.add_argument("max_n", type=int)
        parser.add_argument("max_p", type=int)
        parser.add_argument("--oracles", default=DEFAULT_ORACLES, help=f"comma list from {', '.join(ORACLE_NAMES)}")
        parser.add_argument("--show-all", action="store_true", help="print matching rows too")
        parser.add_argument("--max-edges", type=int, default=None, help="census edge bound")
        parser.add_argument("--max-vertices", type=int, default=None, help="construction vertex bound")
        add_format_argument(parser)
        parser.set_defaults(handler=self.run)

    def run(self, args: argparse.Namespace, out: TextIO) -> int:
        if min(args.max_m, args.max_n, args.max_p) < 1:
            raise InvalidInputError("verify bounds must be at least 1")
        selected = parse_oracles(args.oracles)
        max_edges = self.config.census_max_edges if args.max_edges is None else args.max_edges
        max_vertices = self.config.construction_max_vertices if args.max_vertices is None else args.max_vertices

        records: List[OutputRecord] = []
        for m in range(1, args.max_m + 1):
            for n in range(1, args.max_n + 1):
                for p in range(1, args.max_p + 1):
                    parts = PartSizes(m, n, p)
                    logger.debug("verifying K_%s", parts.as_tuple())
                    records.extend(self.compare(parts, selected, max_edges, max_vertices))

        records.sort(key=OutputRecord.sort_key)
        mismatches = [record for record in records if not record.match]
        RecordRenderer(args.format, out).records(records if args.show_all else mismatches)
        logger.info("checked %s comparisons, %s mismatches", len(records), len(mismatches))
        return EXIT_MISMATCH if mismatches else EXIT_OK

    def compare(
        self, parts: PartSizes, selected: Sequence[str], max_edges: int, max_vertices: int
    ) -> List[OutputRecord]:
        graph = build_complete_multipartite(parts)
        trees = closed_form.tripartite_tree_count(parts)
        total = closed_form.total_rooted_forest_count(parts)
        by_r = {r: closed_form.forest_count_r_roots_in_part(parts, r) for r in range(1, parts.p + 1)}

        rows = [
            OutputRecord.from_counts("trees/sum", parts, None, trees, closed_form.tree_count_via_sum(parts)),
            OutputRecord.from_counts("total-forests/sum", parts, None, total, closed_form.total_via_sum(parts)),
        ]
        rows.extend(
            OutputRecord.from_counts("forests-r/sum", parts, r, value, closed_form.forest_count_via_sum(parts, r))
            for r, value in by_r.items()
        )

        if "kirchhoff" in selected:
            rows.append(
                OutputRecord.from_counts(
                    "trees/kirchhoff", parts, None, trees, oracles.spanning_tree_count_kirchhoff(graph)
                )
            )
        if "minors" in selected:
            rows.extend(
                OutputRecord.from_counts(
                    "forests-r/minors", parts, r, value, oracles.forest_count_r_in_part_oracle(graph, parts, r)
                )
                for r, value in by_r.items()
            )
        if "detLI" in selected:
            rows.append(
                OutputRecord.from_counts(
                    "total-forests/detLI", parts, None, total, oracles.total_rooted_forest_oracle(graph)
                )
            )
        if "census" in selected:
            try:
                census = oracles.exhaustive_census(graph, parts, max_edges=max_edges)
            except ResourceLimitError as exc:
                logger.warning("skipping census for K_%s: %s", parts.as_tuple(), exc)
            else:
                rows.append(OutputRecord.from_counts("total-forests/census", parts, None, total, census.total()))
                rows.extend(
                    OutputRecord.from_counts("forests-r/census", parts, r, value, census.count(0, 0, r))
                    for r, value in by_r.items()
                )
        if "construction" in selected:
            for r, value in by_r.items():
                try:
                    built = enumerate_constructions(parts, r, max_vertices=max_vertices)
                except ResourceLimitError as exc:
                    logger.warning("skipping constructions for K_%s: %s", parts.as_tuple(), exc)
                    break
                rows.append(
                    OutputRecord.from_counts(
                        "forests-r/construction", parts, r, value, binomial(parts.p, r) * built.total
                    )
                )
        return rows


def setup(subparsers: argparse._SubParsersAction, config: Config) -> VerifyCommand:
    command = VerifyCommand(config)
    command.register(subparsers)
    return command
