"""Time-scale separation of price series by empirical mode decomposition.

A series is split into intrinsic mode functions (IMFs); each IMF gets a
characteristic time scale from its analytic signal and a Hurst exponent from
rescaled-range analysis. IMFs are then grouped into a short-term (random)
and a long-term (persistent) horizon and summed into two series, ``x_st``
and ``x_lt``, whose sum is the input.
"""

from .emd import Decomposition, SiftConfig, decompose, extract_imf, find_extrema
from .errors import EmdScalesError
from .fundamentals import correlate, pearson
from .hurst import HurstEstimate, hurst_exponent, rs_statistic
from .ingest import (
    FundamentalsRow,
    FundamentalsTable,
    PriceSeries,
    load_fundamentals_csv,
    load_price_csv,
)
from .pipeline import Analysis, AnalysisConfig, aggregate_by_index, analyze
from .scales import (
    Horizon,
    ImfDiagnostics,
    ScaleReport,
    classify_imfs,
    diagnose,
    normalized_variance,
    reconstruct,
)
from .spectral import analytic_signal, characteristic_timescale, tau_label
from .synth import gen_fbm, gen_fgn, gen_tone_mix

__version__ = "0.1.0"

__all__ = [
    "Analysis",
    "AnalysisConfig",
    "Decomposition",
    "EmdScalesError",
    "FundamentalsRow",
    "FundamentalsTable",
    "Horizon",
    "HurstEstimate",
    "ImfDiagnostics",
    "PriceSeries",
    "ScaleReport",
    "SiftConfig",
    "aggregate_by_index",
    "analytic_signal",
    "analyze",
    "characteristic_timescale",
    "classify_imfs",
    "correlate",
    "decompose",
    "diagnose",
    "extract_imf",
    "find_extrema",
    "gen_fbm",
    "gen_fgn",
    "gen_tone_mix",
    "hurst_exponent",
    "load_fundamentals_csv",
    "load_price_csv",
    "normalized_variance",
    "pearson",
    "reconstruct",
    "rs_statistic",
    "tau_label",
]
