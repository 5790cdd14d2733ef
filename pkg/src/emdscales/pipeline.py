"""End-to-end analysis of one series, and cross-sectional aggregation by IMF index."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .emd import Decomposition, SiftConfig, decompose
from .ingest import PriceSeries
from .scales import (
    Horizon,
    ImfDiagnostics,
    ScaleReport,
    classify_imfs,
    diagnose,
    reconstruct,
)

__all__ = ["AnalysisConfig", "Analysis", "AggregateRow", "analyze", "aggregate_by_index"]


@dataclass(frozen=True)
class AnalysisConfig:
    sift: SiftConfig = field(default_factory=SiftConfig)
    trim_frac: float = 0.05
    min_scale: int = 16
    n_scales: int = 20
    h_boundary: float = 0.65
    tau_boundary_days: float = 90.0
    r2_min: float = 0.9
    days_per_sample: float = 1.0


@dataclass(frozen=True)
class Analysis:
    symbol: str
    dates: tuple | None
    values: np.ndarray
    decomposition: Decomposition
    diagnostics: tuple[ImfDiagnostics, ...]
    labels: tuple[Horizon, ...]
    report: ScaleReport


def analyze(series, cfg: AnalysisConfig | None = None, symbol: str = "series") -> Analysis:
    """Decompose, diagnose, classify and reconstruct one series.

    ``series`` may be a :class:`PriceSeries` (dates are carried through) or
    any 1-d array. A series without IMFs yields empty diagnostics and
    ``x_lt`` equal to the input.
    """
    cfg = cfg or AnalysisConfig()
    if isinstance(series, PriceSeries):
        symbol, dates, values = series.symbol, series.dates, series.values
    else:
        dates, values = None, np.asarray(series, dtype=float)
    d = decompose(values, cfg.sift)
    if d.n_imfs:
        diags = tuple(diagnose(d, cfg.days_per_sample, cfg.trim_frac, cfg.min_scale, cfg.n_scales))
        labels = tuple(classify_imfs(diags, cfg.h_boundary, cfg.tau_boundary_days, cfg.r2_min))
    else:
        diags, labels = (), ()
    report = reconstruct(d, labels, cfg.h_boundary, cfg.tau_boundary_days)
    return Analysis(symbol, dates, values, d, diags, labels, report)


@dataclass(frozen=True)
class AggregateRow:
    imf_index: int
    n_series: int
    mean_h: float
    two_sigma_h: float
    mean_tau_days: float
    min_tau_days: float
    max_tau_days: float


def aggregate_by_index(diag_sets) -> list[AggregateRow]:
    """Average Hurst exponents over series, IMF index by IMF index.

    Row ``k`` summarises the ``k``-th IMF of every series that has one.
    ``two_sigma_h`` is twice the sample standard deviation of those H
    values (NaN with fewer than two). IMFs without a Hurst estimate are left
    out of the H statistics.
    """
    by_index: dict[int, list[ImfDiagnostics]] = {}
    for diags in diag_sets:
        for diag in diags:
            by_index.setdefault(diag.imf_index, []).append(diag)
    rows = []
    for k in sorted(by_index):
        group = by_index[k]
        hs = np.array([g.h for g in group if math.isfinite(g.h)])
        taus = np.array([g.tau_days for g in group if math.isfinite(g.tau_days)])
        rows.append(
            AggregateRow(
                imf_index=k,
                n_series=len(group),
                mean_h=float(hs.mean()) if hs.size else math.nan,
                two_sigma_h=float(2 * hs.std(ddof=1)) if hs.size > 1 else math.nan,
                mean_tau_days=float(taus.mean()) if taus.size else math.nan,
                min_tau_days=float(taus.min()) if taus.size else math.nan,
                max_tau_days=float(taus.max()) if taus.size else math.nan,
            )
        )
    return rows
