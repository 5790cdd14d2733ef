"""Correlation of the long-term reconstruction with annual company fundamentals."""

from __future__ import annotations

import bisect
import math
import warnings
from dataclasses import dataclass
from datetime import date

import numpy as np
from scipy.stats import rankdata

from .errors import (
    DataWarning,
    InsufficientOverlapError,
    ParameterError,
    ZeroVarianceError,
)
from .ingest import FundamentalsTable

__all__ = ["AlignedSamples", "CorrelationReport", "annual_align", "pearson", "spearman", "correlate"]

ALIGN_MODES = ("point", "mean")
METHODS = ("pearson", "spearman")


@dataclass(frozen=True)
class AlignedSamples:
    """``x[i]`` is the price-side sample paired with fiscal year ``year_ends[i]``."""

    year_ends: tuple[date, ...]
    sample_dates: tuple[date, ...]
    x: np.ndarray
    sale: np.ndarray
    net_profit: np.ndarray
    coa: np.ndarray

    def __len__(self):
        return len(self.year_ends)


@dataclass(frozen=True)
class CorrelationReport:
    symbol: str
    n_years: int
    r_sale: float
    r_np: float
    r_coa: float
    alignment_dates: tuple[date, ...]
    method: str = "pearson"


def annual_align(
    dates,
    x_lt,
    table: FundamentalsTable,
    mode: str = "point",
    max_stale_days: int = 7,
) -> AlignedSamples:
    """Pair each fiscal year of ``table`` with one value of ``x_lt``.

    Parameters
    ----------
    dates : sequence of date
        Trading dates of ``x_lt``, strictly increasing.
    x_lt : array_like
    table : FundamentalsTable
    mode : {'point', 'mean'}
        ``'point'`` takes the value on the last trading date on or before the
        fiscal year end. ``'mean'`` averages over the trading dates in the
        fiscal year (after the previous year end; the first year spans the
        preceding 365 days).
    max_stale_days : int
        A year end later than the final trading date by more than this is
        considered uncovered.

    Years not covered by the series are dropped with a :class:`DataWarning`.

    Raises
    ------
    InsufficientOverlapError
        Fewer than three fiscal years could be paired.
    """
    if mode not in ALIGN_MODES:
        raise ParameterError(f"mode must be one of {ALIGN_MODES}")
    dates = list(dates)
    x_lt = np.asarray(x_lt, dtype=float)
    if len(dates) != x_lt.size:
        raise ParameterError("dates and x_lt differ in length")

    keep, picked, values, dropped = [], [], [], []
    prev_end = None
    for k, row in enumerate(table.rows):
        end = row.year_end
        start = prev_end if prev_end is not None else date.fromordinal(end.toordinal() - 365)
        prev_end = end
        i = bisect.bisect_right(dates, end) - 1
        if i < 0 or (end - dates[-1]).days > max_stale_days:
            dropped.append(end)
            continue
        if mode == "point":
            value = x_lt[i]
        else:
            j = bisect.bisect_right(dates, start)
            if j > i:
                dropped.append(end)
                continue
            value = float(np.mean(x_lt[j : i + 1]))
        keep.append(k)
        picked.append(dates[i])
        values.append(value)

    if dropped:
        warnings.warn(
            f"{table.symbol}: {len(dropped)} fiscal year(s) not covered by the price series: "
            + ", ".join(d.isoformat() for d in dropped),
            DataWarning,
            stacklevel=2,
        )
    if len(keep) < 3:
        raise InsufficientOverlapError(f"{table.symbol}: only {len(keep)} fiscal year(s) aligned, need 3")
    rows = [table.rows[k] for k in keep]
    return AlignedSamples(
        year_ends=tuple(r.year_end for r in rows),
        sample_dates=tuple(picked),
        x=np.array(values),
        sale=np.array([r.sale for r in rows]),
        net_profit=np.array([r.net_profit for r in rows]),
        coa=np.array([r.coa for r in rows]),
    )


def pearson(a, b) -> float:
    """Product-moment correlation coefficient of two equal-length samples."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ParameterError("pearson expects two 1-d samples of equal length")
    if a.size < 3:
        raise ParameterError("pearson needs at least 3 pairs")
    da = a - a.mean()
    db = b - b.mean()
    ssa = float(da @ da)
    ssb = float(db @ db)
    if ssa == 0 or ssb == 0:
        raise ZeroVarianceError("correlation with a constant sample is undefined")
    return float(da @ db) / math.sqrt(ssa * ssb)


def spearman(a, b) -> float:
    """Rank correlation: :func:`pearson` on average ranks."""
    return pearson(rankdata(a), rankdata(b))


def correlate(
    dates,
    x_lt,
    table: FundamentalsTable,
    method: str = "pearson",
    mode: str = "point",
) -> CorrelationReport:
    """Correlate annual samples of ``x_lt`` with sale, net profit and operating cash flow."""
    if method not in METHODS:
        raise ParameterError(f"method must be one of {METHODS}")
    corr = pearson if method == "pearson" else spearman
    aligned = annual_align(dates, x_lt, table, mode)
    return CorrelationReport(
        symbol=table.symbol,
        n_years=len(aligned),
        r_sale=corr(aligned.x, aligned.sale),
        r_np=corr(aligned.x, aligned.net_profit),
        r_coa=corr(aligned.x, aligned.coa),
        alignment_dates=aligned.sample_dates,
        method=method,
    )
