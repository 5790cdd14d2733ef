"""Synthetic signals with known ground truth.

All randomness comes from ``numpy.random.Generator`` seeded with a PCG64 bit
generator, so a given ``(parameters, seed)`` pair yields the same series on
every platform.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date

import numpy as np

from .errors import ParameterError

__all__ = [
    "SynthSpec",
    "KINDS",
    "fgn_autocovariance",
    "gen_fgn",
    "gen_fbm",
    "gen_tone_mix",
    "gen_trend",
    "gen_white",
    "generate",
    "business_days",
]

KINDS = ("fgn", "fbm", "tone", "tone-mix", "trend", "white")


def _rng(seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _check_h(h: float) -> None:
    if not 0.0 < h < 1.0:
        raise ParameterError(f"Hurst parameter must lie in (0, 1), got {h}")


def fgn_autocovariance(h: float, lags) -> np.ndarray:
    """Autocovariance of unit-variance fractional Gaussian noise at integer lags."""
    k = np.abs(np.asarray(lags, dtype=float))
    return 0.5 * ((k + 1) ** (2 * h) - 2 * k ** (2 * h) + np.abs(k - 1) ** (2 * h))


def gen_fgn(h: float, n: int, seed=None) -> np.ndarray:
    """Unit-variance fractional Gaussian noise by Hosking's exact recursion.

    Each sample is drawn from its Gaussian distribution conditional on all
    previous samples; the conditional coefficients are updated with the
    Durbin-Levinson recursion. Cost is O(n**2) time and O(n) memory.
    """
    _check_h(h)
    if n < 1:
        raise ParameterError("n must be positive")
    z = _rng(seed).standard_normal(n)
    gamma = fgn_autocovariance(h, np.arange(n))
    x = np.empty(n)
    x[0] = z[0]
    phi = np.zeros(n)
    var = 1.0
    for i in range(1, n):
        prev = phi[: i - 1]
        kappa = (gamma[i] - prev @ gamma[i - 1 : 0 : -1]) / var
        phi[: i - 1] = prev - kappa * prev[::-1]
        phi[i - 1] = kappa
        var *= 1.0 - kappa * kappa
        x[i] = phi[:i] @ x[i - 1 :: -1] + np.sqrt(var) * z[i]
    return x


def gen_fbm(h: float, n: int, seed=None) -> np.ndarray:
    """Fractional Brownian motion sampled at ``1..n``: cumulative sum of :func:`gen_fgn`."""
    return np.cumsum(gen_fgn(h, n, seed))


def gen_white(n: int, seed=None, sd: float = 1.0) -> np.ndarray:
    return sd * _rng(seed).standard_normal(n)


def gen_trend(n: int, slope: float = 1.0, intercept: float = 0.0) -> np.ndarray:
    return intercept + slope * np.arange(n, dtype=float)


def gen_tone_mix(periods, amplitudes, n: int, noise_sd: float = 0.0, seed=None, phases=None):
    """Sum of sinusoids ``a * sin(2*pi*t/period + phase)`` plus optional Gaussian noise.

    Returns
    -------
    series : ndarray
    components : ndarray, shape (len(periods), n)
        The noise-free tones, in the order given.
    """
    periods = np.asarray(periods, dtype=float)
    amplitudes = np.asarray(amplitudes, dtype=float)
    if periods.shape != amplitudes.shape:
        raise ParameterError("periods and amplitudes must have the same length")
    if np.unique(periods).size != periods.size:
        raise ParameterError("periods must be distinct")
    if np.any(periods <= 0):
        raise ParameterError("periods must be positive")
    phases = np.zeros_like(periods) if phases is None else np.asarray(phases, dtype=float)
    t = np.arange(n, dtype=float)
    components = amplitudes[:, None] * np.sin(2 * np.pi * t[None, :] / periods[:, None] + phases[:, None])
    series = components.sum(axis=0)
    if noise_sd > 0:
        series = series + gen_white(n, seed, noise_sd)
    return series, components


@dataclass(frozen=True)
class SynthSpec:
    """Declarative description of a synthetic series.

    ``params`` keys by kind: fgn/fbm ``h``; tone ``period``, ``amplitude``;
    tone-mix ``periods``, ``amplitudes``, ``noise_sd``; trend ``slope``,
    ``intercept``; white ``sd``. Every kind accepts ``offset``, added to the
    result (useful to keep synthetic "prices" positive).
    """

    kind: str
    n: int
    seed: int = 0
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParameterError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.n < 64:
            raise ParameterError("synthetic series need n >= 64")
        if self.kind in ("fgn", "fbm"):
            _check_h(self.params.get("h", 0.5))


def generate(spec: SynthSpec) -> np.ndarray:
    p = spec.params
    if spec.kind == "fgn":
        x = gen_fgn(p.get("h", 0.5), spec.n, spec.seed)
    elif spec.kind == "fbm":
        x = gen_fbm(p.get("h", 0.5), spec.n, spec.seed)
    elif spec.kind == "tone":
        x, _ = gen_tone_mix([p.get("period", 20.0)], [p.get("amplitude", 1.0)], spec.n)
    elif spec.kind == "tone-mix":
        x, _ = gen_tone_mix(
            p.get("periods", [8.0, 64.0]),
            p.get("amplitudes", [1.0] * len(p.get("periods", [8.0, 64.0]))),
            spec.n,
            p.get("noise_sd", 0.0),
            spec.seed,
        )
    elif spec.kind == "trend":
        x = gen_trend(spec.n, p.get("slope", 1.0), p.get("intercept", 0.0))
    else:
        x = gen_white(spec.n, spec.seed, p.get("sd", 1.0))
    return x + p.get("offset", 0.0)


def business_days(n: int, start: date = date(2000, 1, 3)) -> tuple[date, ...]:
    """``n`` consecutive Monday-Friday dates starting at (or after) ``start``."""
    days = np.busday_offset(np.datetime64(start, "D"), np.arange(n), roll="forward")
    return tuple(d.item() for d in days)
