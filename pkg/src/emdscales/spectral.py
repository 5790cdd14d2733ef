"""Analytic signal and characteristic time scale of an IMF."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateSignalError,
    InsufficientDataError,
    ParameterError,
    UnreliableFrequencyError,
)

__all__ = [
    "InstantaneousProfile",
    "analytic_signal",
    "characteristic_timescale",
    "tau_label",
    "TRADING_DAYS_PER_MONTH",
    "TRADING_DAYS_PER_YEAR",
]

TRADING_DAYS_PER_MONTH = 21
TRADING_DAYS_PER_YEAR = 252


@dataclass(frozen=True)
class InstantaneousProfile:
    """Unwrapped phase, instantaneous angular frequency and time scale of an IMF.

    ``omega[k] = phase[k+1] - phase[k]`` (radians per sample), so ``omega`` is
    one sample shorter than ``phase``. ``interior`` is the half-open index
    range of ``omega`` kept after trimming the ends. ``tau`` is in samples
    per cycle.
    """

    phase: np.ndarray
    omega: np.ndarray
    tau: float
    interior: tuple[int, int]
    n_nonpositive: int
    tau_mean: float


def analytic_signal(imf) -> np.ndarray:
    """Analytic signal ``imf + i * H[imf]`` built in the frequency domain.

    Negative-frequency bins are zeroed and positive ones doubled; the DC bin
    and (for even length) the Nyquist bin keep unit weight.
    """
    x = np.asarray(imf, dtype=float)
    n = x.size
    if n < 8:
        raise InsufficientDataError(f"analytic signal needs at least 8 samples, got {n}")
    if not np.any(x):
        raise DegenerateSignalError("analytic signal of an all-zero series is undefined")
    weights = np.zeros(n)
    weights[0] = 1.0
    if n % 2 == 0:
        weights[1 : n // 2] = 2.0
        weights[n // 2] = 1.0
    else:
        weights[1 : (n + 1) // 2] = 2.0
    return np.fft.ifft(np.fft.fft(x) * weights)


def characteristic_timescale(imf, trim_frac: float = 0.05) -> InstantaneousProfile:
    """Representative period of an IMF from its instantaneous frequency.

    The phase of the analytic signal is unwrapped and differenced; after
    dropping ``trim_frac`` of the samples at each end, the period is
    ``2*pi / median(omega)`` over the positive interior frequencies.

    Raises
    ------
    UnreliableFrequencyError
        More than half of the interior frequencies are zero or negative.
    """
    if not 0.0 <= trim_frac < 0.5:
        raise ParameterError("trim_frac must lie in [0, 0.5)")
    z = analytic_signal(imf)
    phase = np.unwrap(np.angle(z))
    omega = np.diff(phase)
    cut = int(np.floor(trim_frac * omega.size))
    lo, hi = cut, omega.size - cut
    inner = omega[lo:hi]
    positive = inner[inner > 0]
    n_bad = inner.size - positive.size
    if positive.size == 0 or n_bad > 0.5 * inner.size:
        raise UnreliableFrequencyError(
            f"{n_bad} of {inner.size} interior instantaneous frequencies are non-positive"
        )
    tau = 2.0 * np.pi / float(np.median(positive))
    tau_mean = 2.0 * np.pi / float(np.mean(positive))
    return InstantaneousProfile(phase, omega, tau, (lo, hi), int(n_bad), tau_mean)


def tau_label(tau_days: float) -> str:
    """Human-readable time scale: days below a month, then months, then years."""
    if tau_days < TRADING_DAYS_PER_MONTH:
        return f"{tau_days:.1f}D"
    if tau_days < TRADING_DAYS_PER_YEAR:
        return f"{tau_days / TRADING_DAYS_PER_MONTH:.1f}M"
    return f"{tau_days / TRADING_DAYS_PER_YEAR:.1f}Y"
