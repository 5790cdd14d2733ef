import functools
import os
from pathlib import Path

import numpy as np
import pytest

from emdscales.synth import gen_fbm, gen_fgn, gen_tone_mix, gen_trend, gen_white

INDEX_CSV_ENV = "EMDSCALES_INDEX_CSV"


@functools.lru_cache(maxsize=None)
def fgn_sample(h, n, seed):
    x = gen_fgn(h, n, seed)
    x.setflags(write=False)
    return x


def nv_fixture():
    """Eight tones; the three slowest carry 5x the amplitude of the five fastest."""
    periods = [5, 14, 40, 110, 300, 800, 2000, 5000]
    amplitudes = [1.0] * 5 + [5.0] * 3
    return gen_tone_mix(periods, amplitudes, 16384)


def synthetic_fixtures():
    """The fixed fixture set used by the completeness, ordering and NV criteria."""
    fx = {}
    for s in range(6):
        fx[f"fbm0.5-n5700-s{s}"] = gen_fbm(0.5, 5700, s) + 100.0
    for h in (0.3, 0.7, 0.8):
        fx[f"fbm{h}-n4096"] = gen_fbm(h, 4096, 7)
    for s in range(3):
        fx[f"fgn0.6-n4096-s{s}"] = gen_fgn(0.6, 4096, s)
    fx["tones-8-64"] = gen_tone_mix([8, 64], [1, 1], 1024)[0]
    fx["tones-21-63-126-252-noisy"] = gen_tone_mix([21, 63, 126, 252], [1, 1, 1, 1], 4096, 0.2, 3)[0]
    fx["tones-8-nv"] = nv_fixture()[0]
    fx["rw-trend-n8192"] = gen_fbm(0.5, 8192, 11) + gen_trend(8192, 0.01)
    fx["gbm-n5700"] = 100.0 * np.exp(np.cumsum(0.01 * gen_white(5700, 5)))
    fx["white-n2048"] = gen_white(2048, 9)
    fx["tone20-trend"] = gen_tone_mix([20], [1], 2048)[0] + gen_trend(2048, 0.002)
    fx["fbm0.5-n8192"] = gen_fbm(0.5, 8192, 21) + 500.0
    return fx


def user_series():
    """Daily series named by the EMDSCALES_INDEX_CSV env var (os.pathsep-separated), if any."""
    from emdscales.ingest import load_price_csv

    raw = os.environ.get(INDEX_CSV_ENV, "")
    out = {}
    for p in filter(None, raw.split(os.pathsep)):
        series = load_price_csv(p)
        out[series.symbol] = series
    return out


@pytest.fixture(scope="session")
def fixtures_all():
    fx = synthetic_fixtures()
    for name, series in user_series().items():
        fx[f"user:{name}"] = series.values
    return fx


@pytest.fixture
def data_dir():
    return Path(__file__).parent / "data"


_acceptance = []


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.skipped):
        return
    if "acceptance" not in report.keywords:
        return
    status = "PASS" if report.passed else "SKIP" if report.skipped else "FAIL"
    _acceptance.append((report.nodeid.split("::")[-1], status))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in _acceptance:
        terminalreporter.write_line(f"{status:4s}  {name}")
