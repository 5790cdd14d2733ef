"""Empirical mode decomposition by envelope-mean sifting.

An intrinsic mode function (IMF) is extracted from a series by repeatedly
subtracting the mean of its upper and lower cubic-spline envelopes. Sifting
stops by the S-number rule: the extrema / zero-crossing counts differ by at
most one and stay unchanged for ``s_number`` consecutive sifts. IMFs are
peeled off the running remainder until it is monotonic or too smooth to
carry an envelope.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import DegenerateEnvelopeError, InsufficientDataError, ParameterError

__all__ = [
    "SiftConfig",
    "Decomposition",
    "SiftResult",
    "find_extrema",
    "count_zero_crossings",
    "is_monotonic",
    "envelope",
    "sift_once",
    "extract_imf",
    "decompose",
]

logger = logging.getLogger(__name__)

BOUNDARIES = ("mirror", "none")
SPLINES = ("natural",)
_MIRROR_COUNT = 2


@dataclass(frozen=True)
class SiftConfig:
    """Parameters of the sifting loop."""

    max_sift_iters: int = 100
    s_number: int = 4
    max_imfs: int = 16
    boundary: str = "mirror"
    spline: str = "natural"

    def __post_init__(self):
        if self.max_sift_iters < 1:
            raise ParameterError("max_sift_iters must be >= 1")
        if self.s_number < 1:
            raise ParameterError("s_number must be >= 1")
        if self.max_imfs < 0:
            raise ParameterError("max_imfs must be >= 0")
        if self.boundary not in BOUNDARIES:
            raise ParameterError(f"boundary must be one of {BOUNDARIES}")
        if self.spline not in SPLINES:
            raise ParameterError(f"spline must be one of {SPLINES}")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Decomposition:
    """IMFs (row 0 is the fastest) and residue of one series.

    ``converged[i]`` is False when IMF ``i`` hit ``max_sift_iters`` before
    the S-number rule was met. ``mean_env_rms[i]`` is the RMS of the last
    envelope mean subtracted, a measure of how far the IMF is from having a
    zero local mean.
    """

    imfs: np.ndarray
    residue: np.ndarray
    sift_counts: tuple[int, ...]
    converged: tuple[bool, ...]
    mean_env_rms: tuple[float, ...]
    config: SiftConfig
    source_len: int

    @property
    def n_imfs(self) -> int:
        return self.imfs.shape[0]

    def reconstruct(self) -> np.ndarray:
        return self.imfs.sum(axis=0) + self.residue


class SiftResult(NamedTuple):
    imf: np.ndarray
    sift_count: int
    converged: bool
    mean_env_rms: float


def find_extrema(x) -> tuple[np.ndarray, np.ndarray]:
    """Indices of strict interior local maxima and minima.

    A flat plateau bounded on both sides by lower (higher) samples counts as
    one maximum (minimum) located at its midpoint, rounded down. Plateaus
    touching either end of the series are not extrema.

    Returns
    -------
    maxima, minima : ndarray of int
    """
    x = np.asarray(x, dtype=float)
    if x.size < 3:
        empty = np.array([], dtype=int)
        return empty, empty.copy()
    change = np.flatnonzero(np.diff(x))
    starts = np.concatenate(([0], change + 1))
    ends = np.concatenate((change, [x.size - 1]))
    v = x[starts]
    if v.size < 3:
        empty = np.array([], dtype=int)
        return empty, empty.copy()
    left, mid, right = v[:-2], v[1:-1], v[2:]
    mids = (starts[1:-1] + ends[1:-1]) // 2
    maxima = mids[(mid > left) & (mid > right)]
    minima = mids[(mid < left) & (mid < right)]
    return maxima.astype(int), minima.astype(int)


def count_zero_crossings(x) -> int:
    """Number of sign changes, treating runs of exact zeros as transparent."""
    s = np.sign(np.asarray(x, dtype=float))
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def is_monotonic(x) -> bool:
    d = np.diff(np.asarray(x, dtype=float))
    return bool(np.all(d >= 0) or np.all(d <= 0))


def _extend(x: np.ndarray, anchors: np.ndarray, boundary: str) -> tuple[np.ndarray, np.ndarray]:
    n = x.size
    pos = anchors.astype(float)
    val = x[anchors]
    if boundary == "mirror" and anchors.size:
        k = min(_MIRROR_COUNT, anchors.size)
        head, tail = anchors[:k], anchors[-k:]
        pos = np.concatenate((-head[::-1].astype(float), pos, 2.0 * (n - 1) - tail[::-1]))
        val = np.concatenate((x[head[::-1]], val, x[tail[::-1]]))
        # anchors sitting on an end reflect onto themselves
        pos, idx = np.unique(pos, return_index=True)
        val = val[idx]
    return pos, val


def envelope(x, anchors, boundary: str = "mirror") -> np.ndarray:
    """Natural cubic spline through ``(anchor, x[anchor])`` evaluated at every sample.

    With ``boundary='mirror'`` the first two and last two anchors are
    reflected about the first and last sample before fitting.

    Raises
    ------
    DegenerateEnvelopeError
        Fewer than two knots remain after boundary extension.
    """
    x = np.asarray(x, dtype=float)
    anchors = np.asarray(anchors, dtype=int)
    pos, val = _extend(x, anchors, boundary)
    if pos.size < 2:
        raise DegenerateEnvelopeError(f"envelope needs >= 2 knots, got {pos.size}")
    t = np.arange(x.size, dtype=float)
    if pos.size == 2:
        # natural cubic through two knots is the chord, extrapolated linearly
        return val[0] + (t - pos[0]) * ((val[1] - val[0]) / (pos[1] - pos[0]))
    return CubicSpline(pos, val, bc_type="natural")(t)


def sift_once(h, boundary: str = "mirror") -> tuple[np.ndarray, np.ndarray]:
    """One sifting step: subtract the mean of the upper and lower envelopes.

    Returns
    -------
    h_next : ndarray
        ``h - mean_env``.
    mean_env : ndarray
        Pointwise mean of the two envelopes.
    """
    h = np.asarray(h, dtype=float)
    maxima, minima = find_extrema(h)
    upper = envelope(h, maxima, boundary)
    lower = envelope(h, minima, boundary)
    mean_env = 0.5 * (upper + lower)
    return h - mean_env, mean_env


def _imf_counts(h: np.ndarray) -> tuple[int, int]:
    maxima, minima = find_extrema(h)
    return maxima.size + minima.size, count_zero_crossings(h)


def extract_imf(d, cfg: SiftConfig | None = None) -> SiftResult:
    """Sift ``d`` until it qualifies as an IMF.

    Iteration stops once ``|#extrema - #zero crossings| <= 1`` has held with
    unchanged counts for ``cfg.s_number`` consecutive sifts, or after
    ``cfg.max_sift_iters`` sifts (``converged=False``). If the candidate
    loses the extrema needed to draw an envelope, sifting stops early and the
    current candidate is returned.
    """
    cfg = cfg or SiftConfig()
    h = np.asarray(d, dtype=float).copy()
    streak, prev_counts = 0, None
    mean_env = np.zeros_like(h)
    count = 0
    converged = False
    while count < cfg.max_sift_iters:
        try:
            h_next, mean_env_next = sift_once(h, cfg.boundary)
        except DegenerateEnvelopeError:
            logger.debug("envelope became degenerate after %d sifts", count)
            break
        h, mean_env = h_next, mean_env_next
        count += 1
        counts = _imf_counts(h)
        if abs(counts[0] - counts[1]) <= 1:
            streak = streak + 1 if counts == prev_counts else 1
        else:
            streak = 0
        prev_counts = counts
        if streak >= cfg.s_number:
            converged = True
            break
    if not converged:
        logger.info("sifting stopped after %d iterations without meeting the S-number rule", count)
    rms = float(np.sqrt(np.mean(mean_env**2)))
    return SiftResult(h, count, converged, rms)


def _n_extrema(x: np.ndarray) -> int:
    maxima, minima = find_extrema(x)
    return maxima.size + minima.size


def decompose(x, cfg: SiftConfig | None = None) -> Decomposition:
    """Decompose a series into IMFs plus a residue.

    Parameters
    ----------
    x : array_like or PriceSeries
        Uniformly sampled input of length >= 8.
    cfg : SiftConfig, optional

    Returns
    -------
    Decomposition
        ``imfs`` has shape ``(n_imfs, len(x))``; ``n_imfs`` is zero for
        monotonic or constant input, in which case the residue is the input.

    Notes
    -----
    Extraction stops when the remainder is monotonic, has fewer than four
    interior extrema, or ``cfg.max_imfs`` IMFs have been found.
    """
    cfg = cfg or SiftConfig()
    x = np.asarray(getattr(x, "values", x), dtype=float)
    if x.ndim != 1:
        raise ParameterError("decompose expects a 1-d series")
    if x.size < 8:
        raise InsufficientDataError(f"decompose needs at least 8 samples, got {x.size}")

    remainder = x.copy()
    imfs, counts, flags, rms = [], [], [], []
    while len(imfs) < cfg.max_imfs:
        if is_monotonic(remainder) or _n_extrema(remainder) < 4:
            break
        res = extract_imf(remainder, cfg)
        imfs.append(res.imf)
        counts.append(res.sift_count)
        flags.append(res.converged)
        rms.append(res.mean_env_rms)
        remainder = remainder - res.imf

    stacked = np.vstack(imfs) if imfs else np.empty((0, x.size))
    return Decomposition(
        imfs=stacked,
        residue=remainder,
        sift_counts=tuple(counts),
        converged=tuple(flags),
        mean_env_rms=tuple(rms),
        config=cfg,
        source_len=x.size,
    )
