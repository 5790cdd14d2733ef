import numpy as np
import pytest
from scipy.linalg import cholesky, toeplitz

from emdscales.errors import ParameterError
from emdscales.ingest import PriceSeries, load_price_csv, write_price_csv
from emdscales.spectral import characteristic_timescale
from emdscales.synth import (
    SynthSpec,
    business_days,
    fgn_autocovariance,
    gen_fbm,
    gen_fgn,
    gen_tone_mix,
    gen_trend,
    gen_white,
    generate,
)


def lag1(x):
    d = x - x.mean()
    return float(d[:-1] @ d[1:] / (d @ d))


@pytest.mark.parametrize("h", [0.2, 0.5, 0.75])
def test_fgn_equals_cholesky_oracle(h):
    # Hosking's recursion is the lower Cholesky factor of the covariance, applied sample by sample
    n, seed = 256, 17
    z = np.random.Generator(np.random.PCG64(seed)).standard_normal(n)
    lower = cholesky(toeplitz(fgn_autocovariance(h, np.arange(n))), lower=True)
    np.testing.assert_allclose(gen_fgn(h, n, seed), lower @ z, atol=1e-10)


def test_autocovariance_lag_zero_and_white():
    np.testing.assert_allclose(fgn_autocovariance(0.5, [0, 1, 5]), [1, 0, 0])
    assert fgn_autocovariance(0.7, [1])[0] == pytest.approx(2 ** 0.4 - 1)


def test_fgn_white_lag1():
    assert abs(lag1(gen_fgn(0.5, 8192, 0))) <= 0.05


def test_fgn_persistent_lag1():
    assert lag1(gen_fgn(0.7, 8192, 0)) == pytest.approx(2 ** (2 * 0.7 - 1) - 1, abs=0.04)


def test_fgn_deterministic():
    assert np.array_equal(gen_fgn(0.6, 500, 3), gen_fgn(0.6, 500, 3))
    assert not np.array_equal(gen_fgn(0.6, 500, 3), gen_fgn(0.6, 500, 4))


@pytest.mark.parametrize("h", [0.0, 1.0, -0.2, 1.5])
def test_fgn_bad_h(h):
    with pytest.raises(ParameterError):
        gen_fgn(h, 100, 0)


def test_fbm_increments():
    n = 8192
    inc = np.diff(np.r_[0.0, gen_fbm(0.5, n, 2)])
    assert abs(inc.mean()) <= 3 / np.sqrt(n)
    assert inc.var() == pytest.approx(1.0, rel=0.1)


def test_tone_mix_sum():
    series, comps = gen_tone_mix([8, 64], [1, 1], 1024)
    assert comps.shape == (2, 1024)
    assert np.array_equal(series, comps.sum(axis=0))


def test_tone_mix_zero_amplitude():
    series, comps = gen_tone_mix([8, 64], [0, 1], 1024)
    assert np.array_equal(series, comps[1])


def test_single_tone_timescale():
    series, _ = gen_tone_mix([20], [1], 1000)
    assert characteristic_timescale(series).tau == pytest.approx(20, rel=0.05)


def test_tone_mix_noise_seeded():
    a, _ = gen_tone_mix([10], [1], 300, 0.5, 9)
    b, _ = gen_tone_mix([10], [1], 300, 0.5, 9)
    assert np.array_equal(a, b)


@pytest.mark.parametrize(
    "periods, amplitudes",
    [([8, 8], [1, 1]), ([8, 64], [1]), ([0, 64], [1, 1])],
)
def test_tone_mix_errors(periods, amplitudes):
    with pytest.raises(ParameterError):
        gen_tone_mix(periods, amplitudes, 100)


def test_trend_and_white():
    np.testing.assert_array_equal(gen_trend(4, 2.0, 1.0), [1, 3, 5, 7])
    assert gen_white(5000, 1, sd=3.0).std() == pytest.approx(3.0, rel=0.05)


@pytest.mark.parametrize(
    "kind, params",
    [
        ("fgn", {"h": 0.7}),
        ("fbm", {"h": 0.3}),
        ("tone", {"period": 12}),
        ("tone-mix", {"periods": [8, 40], "noise_sd": 0.1}),
        ("trend", {"slope": 0.5}),
        ("white", {"sd": 2.0, "offset": 10.0}),
    ],
)
def test_generate_every_kind(kind, params):
    spec = SynthSpec(kind, 256, 5, params)
    x = generate(spec)
    assert x.shape == (256,) and np.all(np.isfinite(x))
    assert np.array_equal(x, generate(SynthSpec(kind, 256, 5, dict(params))))


def test_spec_validation():
    with pytest.raises(ParameterError):
        SynthSpec("pink", 256)
    with pytest.raises(ParameterError):
        SynthSpec("fgn", 32)
    with pytest.raises(ParameterError):
        SynthSpec("fbm", 256, params={"h": 1.0})


def test_business_days():
    days = business_days(6)
    assert all(d.weekday() < 5 for d in days)
    assert days[0].isoformat() == "2000-01-03" and days[5].isoformat() == "2000-01-10"


def test_csv_roundtrip(tmp_path):
    x = generate(SynthSpec("fbm", 300, 1, {"h": 0.5, "offset": 100.0}))
    path = tmp_path / "fbm.csv"
    write_price_csv(PriceSeries("fbm", business_days(x.size), x), path)
    back = load_price_csv(path)
    assert np.array_equal(back.values, x)
