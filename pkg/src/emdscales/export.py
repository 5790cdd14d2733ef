"""CSV and JSON writers for decompositions, reports and reconstructions.

Floats are written with ``repr`` so files are locale independent and a
rerun on the same input reproduces them byte for byte.
"""

from __future__ import annotations

import csv
import json
import math
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .emd import Decomposition
from .spectral import InstantaneousProfile, tau_label

__all__ = [
    "fmt",
    "time_labels",
    "write_decomposition_csv",
    "write_decomposition_json",
    "write_profile_csv",
    "write_rs_csv",
    "report_rows",
    "write_rows_csv",
    "write_json",
    "reconstruction_rows",
    "read_decomposition_csv",
]


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return repr(value) if math.isfinite(value) else "nan"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, np.integer):
        return int(value)
    if hasattr(value, "isoformat"):
        return value.isoformat()
    return value


def time_labels(n: int, dates=None) -> list[str]:
    """ISO dates when available, otherwise sample indices."""
    if dates is not None:
        return [d.isoformat() for d in dates]
    return [str(i) for i in range(n)]


def write_rows_csv(path, header, rows) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])


def write_json(path, payload: dict, timestamp: bool = True) -> None:
    payload = dict(payload)
    if timestamp:
        payload["generated_at"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    with Path(path).open("w", encoding="utf-8") as fh:
        json.dump(_jsonable(payload), fh, indent=2, allow_nan=False)
        fh.write("\n")


def write_decomposition_csv(path, d: Decomposition, dates=None) -> None:
    """Columns ``t, imf1..imfN, residue``; ``t`` is the date or sample index."""
    header = ["t"] + [f"imf{k + 1}" for k in range(d.n_imfs)] + ["residue"]
    cols = np.vstack([d.imfs, d.residue[None, :]])
    rows = ([t, *cols[:, i]] for i, t in enumerate(time_labels(d.source_len, dates)))
    write_rows_csv(path, header, rows)


def read_decomposition_csv(path) -> tuple[list[str], np.ndarray, np.ndarray]:
    """Inverse of :func:`write_decomposition_csv`: ``(t, imfs, residue)``."""
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = list(reader)
    t = [r[0] for r in rows]
    data = np.array([[float(v) for v in r[1:]] for r in rows]).reshape(len(rows), len(header) - 1)
    return t, data[:, :-1].T.copy(), data[:, -1].copy()


def write_decomposition_json(path, d: Decomposition, dates=None, symbol=None, timestamp=True) -> None:
    payload = {
        "symbol": symbol,
        "config": d.config.to_dict(),
        "source_len": d.source_len,
        "sift_counts": list(d.sift_counts),
        "converged": list(d.converged),
        "mean_env_rms": list(d.mean_env_rms),
        "t": time_labels(d.source_len, dates),
        "imfs": d.imfs,
        "residue": d.residue,
    }
    write_json(path, payload, timestamp)


def write_profile_csv(path, profile: InstantaneousProfile, dates=None) -> None:
    """Columns ``t, phase, omega``; ``omega`` is blank on the final sample."""
    n = profile.phase.size
    omega = list(profile.omega) + [None]
    rows = zip(time_labels(n, dates), profile.phase, omega)
    write_rows_csv(path, ["t", "phase", "omega"], rows)


def write_rs_csv(path, estimate) -> None:
    write_rows_csv(path, ["l", "mean_rs"], zip(estimate.scales, estimate.rs_values))


REPORT_HEADER = ["series_id", "imf_index", "tau_days", "tau_label", "H", "stderr", "r2", "nv", "label"]


def report_rows(symbol, diagnostics, labels):
    for diag, label in zip(diagnostics, labels):
        est = diag.hurst
        yield [
            symbol,
            diag.imf_index,
            diag.tau_days,
            tau_label(diag.tau_days) if math.isfinite(diag.tau_days) else "",
            est.h if est else math.nan,
            est.stderr if est else math.nan,
            est.r2 if est else math.nan,
            diag.nv,
            str(label),
        ]


def reconstruction_rows(dates, x, report):
    for t, xi, st, lt in zip(time_labels(len(x), dates), x, report.x_st, report.x_lt):
        yield [t, xi, st, lt]
