"""Hurst exponent by rescaled-range (R/S) analysis."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import (
    InsufficientDataError,
    InsufficientScalesError,
    ParameterError,
    ZeroDispersionError,
)

__all__ = ["HurstEstimate", "rs_statistic", "scale_grid", "rescaled_ranges", "hurst_exponent"]

MIN_SCALES = 4


@dataclass(frozen=True)
class HurstEstimate:
    """Slope of ``log(R/S)`` against ``log(l)`` and its regression diagnostics.

    ``stderr`` is the 1-sigma standard error of the slope.
    """

    h: float
    stderr: float
    r2: float
    scales: tuple[int, ...]
    rs_values: tuple[float, ...]

    @property
    def suspicious(self) -> bool:
        """R/S slopes above one do not correspond to a stationary process."""
        return not 0.0 < self.h <= 1.0


def _dispersion_floor(x: np.ndarray) -> float:
    return 8 * np.finfo(float).eps * max(float(np.max(np.abs(x))), np.finfo(float).tiny)


def rs_statistic(x) -> float:
    """Rescaled range of one window.

    ``R`` is the range of the cumulative sum of deviations from the window
    mean and ``S`` the population (``ddof=0``) standard deviation.
    """
    x = np.asarray(x, dtype=float)
    if x.size < 4:
        raise InsufficientDataError(f"R/S window needs at least 4 samples, got {x.size}")
    dev = x - x.mean()
    s = float(np.sqrt(np.mean(dev**2)))
    if s <= _dispersion_floor(x):
        raise ZeroDispersionError("window has zero standard deviation")
    z = np.cumsum(dev)
    return float((z.max() - z.min()) / s)


def scale_grid(n: int, min_scale: int = 16, n_scales: int = 20) -> np.ndarray:
    """Integer window lengths log-spaced over ``[min_scale, n // 2]``, deduplicated."""
    max_scale = n // 2
    if min_scale < 4:
        raise ParameterError("min_scale must be >= 4")
    if max_scale <= min_scale:
        raise InsufficientScalesError(f"series of length {n} is too short for min_scale={min_scale}")
    grid = np.logspace(np.log10(min_scale), np.log10(max_scale), n_scales)
    return np.unique(np.round(grid).astype(int))


def _mean_rs(x: np.ndarray, scale: int) -> float | None:
    m = x.size // scale
    blocks = x[: m * scale].reshape(m, scale)
    dev = blocks - blocks.mean(axis=1, keepdims=True)
    s = np.sqrt(np.mean(dev**2, axis=1))
    z = np.cumsum(dev, axis=1)
    r = z.max(axis=1) - z.min(axis=1)
    floor = 8 * np.finfo(float).eps * np.maximum(np.abs(blocks).max(axis=1), np.finfo(float).tiny)
    ok = s > floor
    if not np.any(ok):
        return None
    return float(np.mean(r[ok] / s[ok]))


def rescaled_ranges(x, scales) -> tuple[np.ndarray, np.ndarray]:
    """Mean R/S over disjoint blocks at each scale; scales where every block is flat are dropped."""
    x = np.asarray(x, dtype=float)
    kept, values = [], []
    for scale in scales:
        rs = _mean_rs(x, int(scale))
        if rs is not None and rs > 0:
            kept.append(int(scale))
            values.append(rs)
    return np.array(kept, dtype=int), np.array(values)


def hurst_exponent(x, min_scale: int = 16, n_scales: int = 20) -> HurstEstimate:
    """Estimate the Hurst exponent of ``x`` by R/S analysis.

    Parameters
    ----------
    x : array_like
        Series of length >= 64. R/S is applied to the series as given (no
        cumulative sum is taken first).
    min_scale : int
        Smallest window length.
    n_scales : int
        Number of log-spaced window lengths before deduplication.

    Returns
    -------
    HurstEstimate

    Raises
    ------
    InsufficientScalesError
        Fewer than four scales have a usable R/S value.
    """
    x = np.asarray(x, dtype=float)
    if x.size < 64:
        raise InsufficientDataError(f"Hurst estimation needs at least 64 samples, got {x.size}")
    scales, rs = rescaled_ranges(x, scale_grid(x.size, min_scale, n_scales))
    if scales.size < MIN_SCALES:
        raise InsufficientScalesError(f"only {scales.size} usable scales, need {MIN_SCALES}")
    fit = stats.linregress(np.log(scales), np.log(rs))
    return HurstEstimate(
        h=float(fit.slope),
        stderr=float(fit.stderr),
        r2=float(fit.rvalue**2),
        scales=tuple(int(s) for s in scales),
        rs_values=tuple(float(v) for v in rs),
    )
