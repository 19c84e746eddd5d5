from __future__ import annotations

import csv
import json
import logging
import re
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO

from forest_census.errors import InvalidInputError
from forest_census.graph.models import PartSizes

logger = logging.getLogger(__name__)

FORMATS = ("plain", "json", "csv")
RECORD_FIELDS = ("quantity", "m", "n", "p", "r", "value", "oracle_value", "match")
_DECIMAL = re.compile(r"^[0-9]+$")


@dataclass(frozen=True)
class OutputRecord:
    quantity: str
    m: int
    n: int
    p: int
    r: Optional[int]
    value: str
    oracle_value: Optional[str] = None
    match: Optional[bool] = None

    def __post_init__(self) -> None:
        if not _DECIMAL.match(self.value):
            raise InvalidInputError(f"value {self.value!r} is not a non-negative decimal integer")
        if self.oracle_value is not None and not _DECIMAL.match(self.oracle_value):
            raise InvalidInputError(f"oracle value {self.oracle_value!r} is not a non-negative decimal integer")
        if (self.oracle_value is None) != (self.match is None):
            raise InvalidInputError("match must be present exactly when an oracle value is")

    @classmethod
    def from_counts(
        cls,
        quantity: str,
        parts: PartSizes,
        r: Optional[int],
        value: int,
        oracle_value: Optional[int] = None,
    ) -> "OutputRecord":
        return cls(
            quantity=quantity,
            m=parts.m,
            n=parts.n,
            p=parts.p,
            r=r,
            value=str(value),
            oracle_value=None if oracle_value is None else str(oracle_value),
            match=None if oracle_value is None else value == oracle_value,
        )

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "OutputRecord":
        return cls(**{name: data.get(name) for name in RECORD_FIELDS})

    def to_dict(self) -> Dict[str, Any]:
        return {name: getattr(self, name) for name in RECORD_FIELDS}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def sort_key(self) -> tuple:
        return (self.m, self.n, self.p, self.r or 0, self.quantity)


def _plain_cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, (list, tuple)):
        return " ".join(_plain_cell(item) for item in value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (list, tuple)):
        return " ".join(_plain_cell(item) for item in value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


class RecordRenderer:
    def __init__(self, fmt: str, stream: TextIO):
        if fmt not in FORMATS:
            raise InvalidInputError(f"unknown format {fmt!r}")
        self.fmt = fmt
        self.stream = stream

    def records(self, records: Iterable[OutputRecord]) -> None:
        items: List[OutputRecord] = list(records)
        if self.fmt == "json":
            for record in items:
                self.stream.write(record.to_json() + "\n")
        elif self.fmt == "csv":
            self.table(RECORD_FIELDS, [[getattr(record, name) for name in RECORD_FIELDS] for record in items])
        else:
            for record in items:
                self.stream.write(self._plain_record(record) + "\n")
        logger.debug("rendered %s records as %s", len(items), self.fmt)

    def table(self, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
        if self.fmt == "json":
            for row in rows:
                self.stream.write(json.dumps(dict(zip(header, row))) + "\n")
            return
        if self.fmt == "csv":
            writer = csv.writer(self.stream, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_csv_cell(value) for value in row])
            return
        self.stream.write(" ".join(header) + "\n")
        for row in rows:
            self.stream.write(" ".join(_plain_cell(value) for value in row) + "\n")

    def _plain_record(self, record: OutputRecord) -> str:
        params = f"m={record.m} n={record.n} p={record.p}"
        if record.r is not None:
            params += f" r={record.r}"
        line = f"{record.quantity} {params}: {record.value}"
        if record.oracle_value is not None:
            verdict = "match" if record.match else "MISMATCH"
            line += f" (oracle {record.oracle_value}, {verdict})"
        return line
