"""Per-IMF diagnostics, horizon classification and X_ST / X_LT reconstruction."""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .emd import Decomposition
from .errors import DataWarning, DegenerateEnergyError, EmdScalesError, ParameterError
from .hurst import HurstEstimate, hurst_exponent
from .spectral import characteristic_timescale

__all__ = [
    "Horizon",
    "ImfDiagnostics",
    "ScaleReport",
    "normalized_variance",
    "diagnose",
    "classify_imfs",
    "reconstruct",
]



class Horizon(str, enum.Enum):
    SHORT = "ShortTerm"
    LONG = "LongTerm"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ImfDiagnostics:
    """Time scale, Hurst estimate and energy share of one IMF (``imf_index`` is 1-based).

    ``tau_days`` is NaN and ``hurst`` None when the respective estimate
    failed; the failure message is kept in ``notes``.
    """

    imf_index: int
    tau_days: float
    hurst: HurstEstimate | None
    nv: float
    notes: tuple[str, ...] = ()

    @property
    def h(self) -> float:
        return self.hurst.h if self.hurst is not None else math.nan


@dataclass(frozen=True)
class ScaleReport:
    labels: tuple[Horizon, ...]
    x_st: np.ndarray
    x_lt: np.ndarray
    h_boundary: float
    tau_boundary_days: float


def normalized_variance(d: Decomposition) -> np.ndarray:
    """Root-sum-square energy of each IMF divided by the total over all IMFs.

    The residue does not enter the denominator.
    """
    if d.n_imfs == 0:
        raise DegenerateEnergyError("normalized variance needs at least one IMF")
    rss = np.sqrt(np.sum(d.imfs**2, axis=1))
    total = rss.sum()
    if total == 0:
        raise DegenerateEnergyError("all IMFs are identically zero")
    return rss / total


def diagnose(
    d: Decomposition,
    days_per_sample: float = 1.0,
    trim_frac: float = 0.05,
    min_scale: int = 16,
    n_scales: int = 20,
) -> list[ImfDiagnostics]:
    """Characteristic time scale, Hurst exponent and NV for every IMF of ``d``.

    Estimation failures on a single IMF are recorded in its ``notes`` rather
    than raised, so one degenerate mode does not sink the whole report.
    """
    nv = normalized_variance(d)
    out = []
    for k, imf in enumerate(d.imfs):
        notes = []
        try:
            tau = characteristic_timescale(imf, trim_frac).tau * days_per_sample
        except EmdScalesError as exc:
            tau = math.nan
            notes.append(f"tau: {exc}")
        try:
            est = hurst_exponent(imf, min_scale, n_scales)
        except EmdScalesError as exc:
            est = None
            notes.append(f"hurst: {exc}")
        out.append(ImfDiagnostics(k + 1, tau, est, float(nv[k]), tuple(notes)))
    return out


def _hurst_reliable(est: HurstEstimate | None, r2_min: float) -> bool:
    return est is not None and math.isfinite(est.h) and est.r2 >= r2_min


def classify_imfs(
    diags,
    h_boundary: float = 0.65,
    tau_boundary_days: float = 90.0,
    r2_min: float = 0.9,
) -> list[Horizon]:
    """Label each IMF short- or long-term.

    An IMF is long-term when its Hurst exponent exceeds ``h_boundary``. If
    the Hurst estimate is missing or its log-log fit has ``r2 < r2_min``
    (R/S of a pure oscillation is not a power law), the time scale decides
    instead: long-term when ``tau_days > tau_boundary_days``.

    Labels are then made monotone in IMF index: every IMF slower than the
    first long-term one is promoted to long-term, with a :class:`DataWarning`
    if that changed anything.
    """
    if not 0.0 <= r2_min <= 1.0:
        raise ParameterError("r2_min must lie in [0, 1]")
    raw = []
    for diag in diags:
        if _hurst_reliable(diag.hurst, r2_min):
            long_term = diag.hurst.h > h_boundary
        else:
            long_term = math.isfinite(diag.tau_days) and diag.tau_days > tau_boundary_days
        raw.append(Horizon.LONG if long_term else Horizon.SHORT)

    labels = list(raw)
    if Horizon.LONG in raw:
        first = raw.index(Horizon.LONG)
        labels[first:] = [Horizon.LONG] * (len(raw) - first)
    if labels != raw:
        promoted = [i + 1 for i, (a, b) in enumerate(zip(raw, labels)) if a != b]
        warnings.warn(f"non-monotone horizon labels; promoted IMF(s) {promoted} to long-term", DataWarning, stacklevel=2)
    return labels


def reconstruct(
    d: Decomposition,
    labels,
    h_boundary: float = math.nan,
    tau_boundary_days: float = math.nan,
) -> ScaleReport:
    """Sum short-term IMFs into ``x_st``; long-term IMFs plus the residue into ``x_lt``.

    The thresholds are only recorded on the report, for provenance.
    """
    labels = tuple(Horizon(label) for label in labels)
    if len(labels) != d.n_imfs:
        raise ParameterError(f"{len(labels)} labels for {d.n_imfs} IMFs")
    short = np.array([lab is Horizon.SHORT for lab in labels], dtype=bool)
    x_st = d.imfs[short].sum(axis=0) if short.any() else np.zeros(d.source_len)
    x_lt = d.imfs[~short].sum(axis=0) + d.residue if (~short).any() else d.residue.copy()
    return ScaleReport(labels, x_st, x_lt, h_boundary, tau_boundary_days)
