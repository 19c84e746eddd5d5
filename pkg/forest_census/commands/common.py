from __future__ import annotations

import argparse

from forest_census.graph.models import PartSizes
from forest_census.services.renderer import FORMATS

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INVALID = 2


def add_parts_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("m", type=int, help="size of H_m")
    parser.add_argument("n", type=int, help="size of H_n")
    parser.add_argument("p", type=int, help="size of H_p")


def add_format_argument(parser: argparse.ArgumentParser, default: str = "plain") -> None:
    parser.add_argument("--format", choices=FORMATS, default=default, help="output format")


def parse_parts(args: argparse.Namespace) -> PartSizes:
    return PartSizes(m=args.m, n=args.n, p=args.p)
