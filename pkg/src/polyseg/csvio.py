"""CSV series files: one point per row, either ``x,y`` or just ``y``."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import TimeSeries

FORMATS = ("xy", "y", "auto")


class SeriesParseError(ValueError):
    """Malformed series file; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


@dataclass(frozen=True)
class SeriesFile:
    path: Path
    format: str = "auto"
    delimiter: str = ","
    header: bool = False

    def read(self) -> TimeSeries:
        try:
            text = Path(self.path).read_text()
        except OSError as exc:
            raise SeriesParseError(f"cannot read {self.path}: {exc.strerror}") from None
        return parse_series(text, self.format, self.delimiter, self.header)


def parse_series(
    text: str, format: str = "auto", delimiter: str = ",", header: bool = False
) -> TimeSeries:
    """Parse CSV text. Blank lines and ``#`` comments are skipped.

    ``auto`` picks ``y`` when the first data row has one field and ``xy``
    when it has two.
    """
    if format not in FORMATS:
        raise SeriesParseError(f"format must be one of {FORMATS}, got {format!r}")
    rows: list[tuple[int, list[str]]] = []
    reader = csv.reader(io.StringIO(text), delimiter=delimiter)
    skipped_header = not header
    for fields in reader:
        line = reader.line_num
        if not fields or all(not f.strip() for f in fields) or fields[0].lstrip().startswith("#"):
            continue
        if not skipped_header:
            skipped_header = True
            continue
        rows.append((line, fields))
    if not rows:
        raise SeriesParseError("no data rows")
    width = 1 if format == "y" else 2 if format == "xy" else len(rows[0][1])
    if width not in (1, 2):
        raise SeriesParseError(
            f"expected 1 (y) or 2 (x,y) columns, got {width}", rows[0][0]
        )
    values = np.empty((len(rows), width))
    for r, (line, fields) in enumerate(rows):
        if len(fields) != width:
            raise SeriesParseError(f"expected {width} columns, got {len(fields)}", line)
        for c, field in enumerate(fields):
            try:
                values[r, c] = float(field)
            except ValueError:
                raise SeriesParseError(f"not a number: {field.strip()!r}", line) from None
            if not np.isfinite(values[r, c]):
                raise SeriesParseError(f"non-finite value {field.strip()!r}", line)
    if width == 1:
        return TimeSeries(np.arange(len(rows), dtype=float), values[:, 0])
    x = values[:, 0]
    bad = np.flatnonzero(np.diff(x) <= 0)
    if bad.size:
        raise SeriesParseError("x values must be strictly increasing", rows[bad[0] + 1][0])
    return TimeSeries(x, values[:, 1])


def format_series(series: TimeSeries, format: str = "xy", delimiter: str = ",") -> str:
    """Shortest round-trip decimal text for every value."""
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    for xi, yi in zip(series.x, series.y):
        row = [repr(float(yi))] if format == "y" else [repr(float(xi)), repr(float(yi))]
        writer.writerow(row)
    return buf.getvalue()


def read_series(path, format: str = "auto", delimiter: str = ",", header: bool = False):
    return SeriesFile(Path(path), format, delimiter, header).read()


def write_series(path, series: TimeSeries, format: str = "xy", delimiter: str = ","):
    Path(path).write_text(format_series(series, format, delimiter))
