"""Deterministic report tables in CSV or pipe-delimited markdown.

Numbers are rendered with a fixed decimal count (default 2, like the
published tables) or at full precision when ``decimals`` is None, in which
case re-parsing a report reproduces the solver outputs bit for bit. No
locale-dependent formatting anywhere.
"""

from __future__ import annotations

import csv
import io
from typing import Sequence

__all__ = ["format_value", "render_report", "write_report", "parse_report"]

FORMATS = ("csv", "markdown")


def format_value(value, decimals: int | None) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value) if decimals is None else f"{value:.{decimals}f}"
    return str(value)


def _cell(row: dict, col: str, decimals: int | None, overrides: dict) -> str:
    return format_value(row[col], overrides.get(col, decimals) if decimals is not None else None)


def _render_csv(columns: Sequence[str], rows: Sequence[dict], decimals: int | None, overrides: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row, col, decimals, overrides) for col in columns])
    return buf.getvalue()


def _render_markdown(
    columns: Sequence[str], rows: Sequence[dict], decimals: int | None, overrides: dict
) -> str:
    lines = [
        "| " + " | ".join(columns) + " |",
        "| " + " | ".join("---" for _ in columns) + " |",
    ]
    for row in rows:
        lines.append("| " + " | ".join(_cell(row, col, decimals, overrides) for col in columns) + " |")
    return "\n".join(lines) + "\n"


def render_report(
    columns: Sequence[str],
    rows: Sequence[dict],
    fmt: str,
    decimals: int | None = 2,
    column_decimals: dict | None = None,
) -> str:
    """Render rows as a table; ``column_decimals`` overrides per column.

    ``decimals=None`` means full precision everywhere (exact float
    round-trip) and ignores the overrides.
    """
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    overrides = column_decimals or {}
    if fmt == "csv":
        return _render_csv(columns, rows, decimals, overrides)
    return _render_markdown(columns, rows, decimals, overrides)


def write_report(
    path: str,
    columns: Sequence[str],
    rows: Sequence[dict],
    fmt: str,
    decimals: int | None = 2,
    column_decimals: dict | None = None,
) -> None:
    text = render_report(columns, rows, fmt, decimals, column_decimals)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def parse_report(text: str, fmt: str) -> list[dict[str, str]]:
    """Parse a rendered report back into string-valued rows."""
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    if fmt == "csv":
        reader = csv.reader(io.StringIO(text))
        table = [row for row in reader if row]
    else:
        table = []
        for line in text.splitlines():
            line = line.strip()
            if not line.startswith("|"):
                continue
            cells = [cell.strip() for cell in line.strip("|").split("|")]
            if all(set(cell) <= {"-"} and cell for cell in cells):
                continue  # separator row
            table.append(cells)
    if not table:
        return []
    header = table[0]
    return [dict(zip(header, row)) for row in table[1:]]
