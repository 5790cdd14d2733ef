"""Loading of daily price files and annual fundamentals tables.

Price files are Yahoo-style CSVs (``Date,Open,High,Low,Close,Adj Close,Volume``)
or any CSV with a ``Date`` column and a numeric value column. Calendar gaps are
ignored: consecutive rows are one trading day apart.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass, field
from datetime import date, datetime
from pathlib import Path

import numpy as np

from .errors import DataFormatError, DataWarning, InsufficientDataError, OrderingError

__all__ = [
    "PriceSeries",
    "FundamentalsTable",
    "FundamentalsRow",
    "load_price_csv",
    "load_fundamentals_csv",
    "write_price_csv",
    "log_prices",
    "parse_date",
]

FUNDAMENTALS_HEADER = ("year_end", "sale", "net_profit", "coa")
GAP_POLICIES = ("drop", "strict")


def parse_date(text: str) -> date:
    """Parse ``YYYY-MM-DD`` or a full ISO-8601 timestamp into a date."""
    text = text.strip()
    try:
        return date.fromisoformat(text)
    except ValueError:
        pass
    try:
        return datetime.fromisoformat(text.replace("Z", "+00:00")).date()
    except ValueError:
        raise DataFormatError(f"unparsable date {text!r}") from None


def _parse_float(text: str) -> float | None:
    try:
        value = float(text)
    except (TypeError, ValueError):
        return None
    return value if math.isfinite(value) else None


@dataclass(frozen=True)
class PriceSeries:
    """Uniformly indexed (trading-day) series of price levels."""

    symbol: str
    dates: tuple[date, ...]
    values: np.ndarray
    sampling_unit: str = "trading-day"
    n_dropped: int = field(default=0, compare=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "dates", tuple(self.dates))
        if values.ndim != 1 or len(values) != len(self.dates):
            raise DataFormatError("dates and values must be 1-d and of equal length")
        if len(values) < 2:
            raise InsufficientDataError(f"{self.symbol}: need at least 2 rows, got {len(values)}")
        if not np.all(np.isfinite(values)):
            raise DataFormatError(f"{self.symbol}: non-finite values")
        for prev, cur in zip(self.dates, self.dates[1:]):
            if cur <= prev:
                raise OrderingError(f"{self.symbol}: dates not strictly increasing at {cur}")

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class FundamentalsRow:
    year_end: date
    sale: float
    net_profit: float
    coa: float


@dataclass(frozen=True)
class FundamentalsTable:
    symbol: str
    rows: tuple[FundamentalsRow, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if len(self.rows) < 3:
            raise InsufficientDataError(
                f"{self.symbol}: fundamentals need at least 3 rows, got {len(self.rows)}"
            )
        for prev, cur in zip(self.rows, self.rows[1:]):
            if cur.year_end <= prev.year_end:
                raise OrderingError(f"{self.symbol}: year_end not strictly increasing at {cur.year_end}")

    def __len__(self):
        return len(self.rows)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.rows], dtype=float)


def _symbol_from_path(path: Path) -> str:
    return path.stem


def load_price_csv(
    path: str | Path,
    column: str = "Close",
    on_gap: str = "drop",
    symbol: str | None = None,
) -> PriceSeries:
    """Read a daily price CSV into a :class:`PriceSeries`.

    Parameters
    ----------
    path : str or Path
        CSV file with a header row containing ``Date`` and ``column``.
    column : str
        Value column, ``"Close"`` by default (``"Adj Close"`` also common).
    on_gap : {'drop', 'strict'}
        Rows whose value is missing or unparsable (Yahoo writes ``null``) are
        skipped with a :class:`DataWarning` under ``'drop'``; ``'strict'``
        raises instead.
    symbol : str, optional
        Identifier; defaults to the file stem.

    Raises
    ------
    DataFormatError
        Missing column, bad date, or a gap under ``on_gap='strict'``.
    OrderingError
        Duplicate or decreasing dates. Rows are never re-sorted.
    InsufficientDataError
        Fewer than two valid rows.
    """
    if on_gap not in GAP_POLICIES:
        raise ValueError(f"on_gap must be one of {GAP_POLICIES}, got {on_gap!r}")
    path = Path(path)
    symbol = symbol or _symbol_from_path(path)

    with path.open(newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise DataFormatError(f"{path}: empty file") from None
        if "Date" not in header:
            raise DataFormatError(f"{path}: no 'Date' column in header {header}")
        if column not in header:
            raise DataFormatError(f"{path}: no {column!r} column in header {header}")
        i_date, i_val = header.index("Date"), header.index(column)

        dates, values, dropped = [], [], 0
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) <= max(i_date, i_val):
                raise DataFormatError(f"{path}:{lineno}: short row")
            value = _parse_float(row[i_val])
            if value is None:
                if on_gap == "strict":
                    raise DataFormatError(f"{path}:{lineno}: missing value {row[i_val]!r}")
                dropped += 1
                continue
            dates.append(parse_date(row[i_date]))
            values.append(value)

    if dropped:
        warnings.warn(f"{symbol}: dropped {dropped} row(s) with missing values", DataWarning, stacklevel=2)
    if len(values) < 2:
        raise InsufficientDataError(f"{path}: need at least 2 valid rows, got {len(values)}")
    return PriceSeries(symbol, tuple(dates), np.array(values), n_dropped=dropped)


def write_price_csv(series: PriceSeries, path: str | Path, column: str = "Close") -> None:
    """Write ``series`` as a two-column ``Date,<column>`` CSV readable by :func:`load_price_csv`."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["Date", column])
        for d, v in zip(series.dates, series.values):
            writer.writerow([d.isoformat(), repr(float(v))])


def log_prices(series: PriceSeries) -> PriceSeries:
    """Natural log of the price level; all values must be positive."""
    if np.any(series.values <= 0):
        raise DataFormatError(f"{series.symbol}: log transform needs positive prices")
    return PriceSeries(series.symbol, series.dates, np.log(series.values), series.sampling_unit, series.n_dropped)


def load_fundamentals_csv(path: str | Path, symbol: str | None = None) -> FundamentalsTable:
    """Read an annual fundamentals CSV with header ``year_end,sale,net_profit,coa``.

    Rows must already be in increasing ``year_end`` order and every metric
    must be a finite number.
    """
    path = Path(path)
    symbol = symbol or _symbol_from_path(path)
    with path.open(newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        try:
            header = tuple(h.strip() for h in next(reader))
        except StopIteration:
            raise DataFormatError(f"{path}: empty file") from None
        if header != FUNDAMENTALS_HEADER:
            raise DataFormatError(f"{path}: header must be {','.join(FUNDAMENTALS_HEADER)}, got {','.join(header)}")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 4:
                raise DataFormatError(f"{path}:{lineno}: expected 4 fields, got {len(row)}")
            metrics = [_parse_float(cell) for cell in row[1:]]
            if any(m is None for m in metrics):
                raise DataFormatError(f"{path}:{lineno}: non-numeric metric in {row[1:]}")
            rows.append(FundamentalsRow(parse_date(row[0]), *metrics))
    return FundamentalsTable(symbol, tuple(rows))
