"""CSV output: header row, 17 significant digits, LF endings, inf sentinels."""

from __future__ import annotations

import csv
import io

from .config import Scenario
from .scenarios import COLUMNS, SWEEP_COLUMN, SweepRecord


def format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        # format() renders infinities as "inf" / "-inf"
        return format(value, ".17g")
    return str(value)


def records_to_csv(scenario: Scenario, records: list[SweepRecord]) -> str:
    columns = COLUMNS[scenario]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    sweep_col = SWEEP_COLUMN.get(scenario)
    for rec in records:
        row = []
        for col in columns:
            value = rec.sweep_value if col == sweep_col else getattr(rec, col)
            row.append(format_value(value))
        writer.writerow(row)
    return buf.getvalue()


def write_csv(path, scenario: Scenario, records: list[SweepRecord]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(records_to_csv(scenario, records))
