"""Trajectory records and CSV/JSON emission.

Complex values are written as ``[re, im]`` pairs in JSON and as paired
``re``/``im`` columns in CSV. CSV floats use 17 significant digits, which
round-trips every double exactly.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Iterable, Sequence

from .coin_and_state import AmplitudeRow
from .qw_engine import QwState

__all__ = [
    "TrajectoryRecord",
    "format_value",
    "qw_records",
    "read_records",
    "rca_records",
    "rows_to_csv",
    "write_records",
]


@dataclass(frozen=True)
class TrajectoryRecord:
    n: int
    k: int
    component: str  # "L" / "R" for the walk, "X" for the automaton
    re: float
    im: float
    prob_or_sq: float


def _row_records(n: int, row: AmplitudeRow, component: str) -> list[TrajectoryRecord]:
    return [
        TrajectoryRecord(n, k, component, float(z.real), float(z.imag), float(abs(z) ** 2))
        for k, z in zip(row.sites(), row.values)
    ]


def qw_records(state: QwState) -> list[TrajectoryRecord]:
    return _row_records(state.time, state.left_row, "L") + _row_records(
        state.time, state.right_row, "R"
    )


def rca_records(n: int, row: AmplitudeRow) -> list[TrajectoryRecord]:
    return _row_records(n, row, "X")


def format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if value is None:
        return ""
    return str(value)


def rows_to_csv(rows: Sequence[dict], columns: Sequence[str] | None = None) -> str:
    if columns is None:
        columns = []
        for row in rows:
            columns.extend(c for c in row if c not in columns)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(c)) for c in columns])
    return buf.getvalue()


_RECORD_COLUMNS = [f.name for f in fields(TrajectoryRecord)]


def write_records(records: Iterable[TrajectoryRecord], path: Path, fmt: str) -> None:
    rows = [asdict(r) for r in records]
    if fmt == "json":
        path.write_text(json.dumps(rows) + "\n")
    else:
        path.write_text(rows_to_csv(rows, _RECORD_COLUMNS))


def read_records(path: Path) -> list[TrajectoryRecord]:
    """Load records written by :func:`write_records` (or a full JSON run document)."""
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        data = json.loads(text)
        if isinstance(data, dict):
            data = data["records"]
        return [TrajectoryRecord(**row) for row in data]
    reader = csv.DictReader(io.StringIO(text))
    return [
        TrajectoryRecord(
            int(row["n"]),
            int(row["k"]),
            row["component"],
            float(row["re"]),
            float(row["im"]),
            float(row["prob_or_sq"]),
        )
        for row in reader
    ]
