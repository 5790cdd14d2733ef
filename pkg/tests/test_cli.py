import csv
import json
from datetime import date

import numpy as np
import pytest

from emdscales.cli import main
from emdscales.export import read_decomposition_csv
from emdscales.ingest import PriceSeries, load_price_csv, write_price_csv
from emdscales.synth import business_days, gen_fbm


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def write_series(path, values, start=date(2000, 1, 3)):
    write_price_csv(PriceSeries(path.stem, business_days(len(values), start), values), path)
    return path


@pytest.fixture
def fbm_csv(tmp_path):
    return write_series(tmp_path / "FBM.csv", gen_fbm(0.5, 2000, 1) + 100)


@pytest.fixture
def two_csvs(tmp_path):
    return [write_series(tmp_path / f"S{k}.csv", gen_fbm(0.5, 1500, k) + 100) for k in range(2)]


def run(*argv):
    return main([str(a) for a in argv])


def last_json(capsys):
    lines = [ln for ln in capsys.readouterr().err.splitlines() if ln.startswith("{")]
    return [json.loads(ln) for ln in lines]


class TestDecompose:
    def test_csv(self, tmp_path, fbm_csv):
        out = tmp_path / "out"
        assert run("decompose", fbm_csv, "--out-dir", out) == 0
        t, imfs, residue = read_decomposition_csv(out / "FBM_decomposition.csv")
        x = load_price_csv(fbm_csv).values
        assert t[0] == "2000-01-03" and imfs.shape[1] == x.size
        np.testing.assert_allclose(imfs.sum(axis=0) + residue, x, atol=1e-9)

    def test_monotonic_has_no_imf_columns(self, tmp_path):
        path = write_series(tmp_path / "UP.csv", np.linspace(1, 2, 100))
        assert run("decompose", path, "--out-dir", tmp_path) == 0
        header = (tmp_path / "UP_decomposition.csv").read_text().splitlines()[0]
        assert header == "t,residue"

    def test_json(self, tmp_path, fbm_csv):
        assert run("decompose", fbm_csv, "--out-dir", tmp_path, "--format", "json", "--s-number", "3") == 0
        payload = json.loads((tmp_path / "FBM_decomposition.json").read_text())
        assert payload["config"]["s_number"] == 3 and "generated_at" in payload
        assert len(payload["imfs"]) == len(payload["sift_counts"])

    def test_missing_file(self, tmp_path, capsys):
        assert run("decompose", tmp_path / "nope.csv", "--out-dir", tmp_path) == 3
        (record,) = last_json(capsys)
        assert record["error"] == "io" and record["exit_code"] == 3

    def test_format_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("Date,Open\n2020-01-01,1\n2020-01-02,2\n")
        assert run("decompose", bad, "--out-dir", tmp_path) == 4
        assert last_json(capsys)[0]["error"] == "format"

    def test_ordering_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("Date,Close\n2020-01-02,1\n2020-01-01,2\n")
        assert run("decompose", bad, "--out-dir", tmp_path) == 4
        assert last_json(capsys)[0]["error"] == "ordering"


class TestUsage:
    def test_no_inputs(self, capsys):
        assert run("report") == 2

    def test_no_command(self):
        assert run() == 2

    def test_bad_parameter(self, tmp_path, fbm_csv):
        assert run("decompose", fbm_csv, "--out-dir", tmp_path, "--s-number", "0") == 2

    def test_too_short_to_decompose(self, tmp_path, capsys):
        path = write_series(tmp_path / "tiny.csv", [1.0, 2.0, 1.0, 2.0, 1.0])
        assert run("report", path, "--out-dir", tmp_path) == 4
        assert last_json(capsys)[0]["error"] == "insufficient-data"

    def test_numerical_error(self, tmp_path, capsys):
        # a flat price has a flat x_lt, which cannot be correlated
        path = write_series(tmp_path / "FLAT.csv", np.full(1500, 7.0))
        fund = fundamentals_file(tmp_path / "f.csv", [2001, 2002, 2003, 2004])
        assert run("correlate", path, "--fundamentals", fund, "--out-dir", tmp_path) == 5
        assert last_json(capsys)[0]["error"] == "zero-variance"


class TestReport:
    def test_single(self, tmp_path, fbm_csv):
        assert run("report", fbm_csv, "--out-dir", tmp_path, "--rs-tables", "--profiles") == 0
        rows = read_csv(tmp_path / "FBM_report.csv")
        assert [int(r["imf_index"]) for r in rows] == list(range(1, len(rows) + 1))
        assert {r["label"] for r in rows} <= {"ShortTerm", "LongTerm"}
        assert abs(sum(float(r["nv"]) for r in rows) - 1) <= 1e-12
        assert not (tmp_path / "aggregate_report.csv").exists()
        assert (tmp_path / "FBM_imf1_rs.csv").read_text().startswith("l,mean_rs\n")
        assert (tmp_path / "FBM_imf1_profile.csv").read_text().startswith("t,phase,omega\n")

    def test_aggregate(self, tmp_path, two_csvs):
        assert run("report", *two_csvs, "--out-dir", tmp_path) == 0
        agg = read_csv(tmp_path / "aggregate_report.csv")
        assert agg[0]["n_series"] == "2"
        hs = [float(read_csv(tmp_path / f"S{k}_report.csv")[0]["H"]) for k in range(2)]
        assert float(agg[0]["mean_H"]) == pytest.approx(np.mean(hs))
        assert float(agg[0]["two_sigma_H"]) == pytest.approx(2 * np.std(hs, ddof=1))

    def test_continues_past_failure(self, tmp_path, two_csvs, capsys):
        rc = run("report", two_csvs[0], tmp_path / "missing.csv", two_csvs[1], "--out-dir", tmp_path)
        assert rc == 3
        records = last_json(capsys)
        assert records[-1] == {"summary": {"inputs": 3, "failed": 1}}
        assert (tmp_path / "S0_report.csv").exists() and (tmp_path / "S1_report.csv").exists()

    def test_jobs_match_serial(self, tmp_path, two_csvs):
        a, b = tmp_path / "a", tmp_path / "b"
        assert run("report", *two_csvs, "--out-dir", a) == 0
        assert run("report", *two_csvs, "--out-dir", b, "--jobs", "2") == 0
        for name in ("S0_report.csv", "S1_report.csv", "aggregate_report.csv"):
            assert (a / name).read_bytes() == (b / name).read_bytes()


class TestHorizons:
    def test_csv(self, tmp_path, fbm_csv):
        assert run("horizons", fbm_csv, "--out-dir", tmp_path) == 0
        rows = read_csv(tmp_path / "FBM_horizons.csv")
        x = np.array([float(r["x"]) for r in rows])
        st = np.array([float(r["x_st"]) for r in rows])
        lt = np.array([float(r["x_lt"]) for r in rows])
        assert np.max(np.abs(st + lt - x)) <= 1e-8 * np.ptp(x)
        labels = read_csv(tmp_path / "FBM_labels.csv")
        assert labels and set(labels[0]) == {"imf_index", "tau_days", "H", "label"}

    def test_all_short_gives_residue(self, tmp_path, fbm_csv):
        # thresholds nothing can exceed
        out = tmp_path / "o"
        args = ("--h-boundary", "10", "--tau-boundary-days", "1e9")
        assert run("horizons", fbm_csv, "--out-dir", out, *args) == 0
        assert run("decompose", fbm_csv, "--out-dir", out) == 0
        _, _, residue = read_decomposition_csv(out / "FBM_decomposition.csv")
        lt = np.array([float(r["x_lt"]) for r in read_csv(out / "FBM_horizons.csv")])
        np.testing.assert_array_equal(lt, residue)

    def test_log(self, tmp_path, fbm_csv):
        assert run("horizons", fbm_csv, "--out-dir", tmp_path, "--log") == 0
        rows = read_csv(tmp_path / "FBM_horizons.csv")
        x = np.array([float(r["x"]) for r in rows])
        np.testing.assert_allclose(x, np.log(load_price_csv(fbm_csv).values))

    def test_json(self, tmp_path, fbm_csv):
        assert run("horizons", fbm_csv, "--out-dir", tmp_path, "--format", "json") == 0
        payload = json.loads((tmp_path / "FBM_horizons.json").read_text())
        assert payload["thresholds"]["h_boundary"] == 0.65
        assert len(payload["x"]) == len(payload["x_lt"]) == len(payload["date"])


def fundamentals_file(path, years, sale=lambda y: 10.0 * y):
    lines = ["year_end,sale,net_profit,coa"]
    lines += [f"{y}-03-31,{sale(y)},{(y - 2000) ** 2},{y % 7}" for y in years]
    path.write_text("\n".join(lines) + "\n")
    return path


class TestCorrelate:
    def test_proportional_to_sale(self, tmp_path):
        # a monotone series has no IMFs, so x_lt is the series itself
        days = business_days(3200, date(2006, 6, 1))
        prices = np.array([2.0 * d.year + d.timetuple().tm_yday / 400 for d in days])
        write_price_csv(PriceSeries("MONO", days, prices), tmp_path / "MONO.csv")
        ends = {y: prices[max(i for i, d in enumerate(days) if d <= date(y, 3, 31))] for y in range(2007, 2019)}
        fund = fundamentals_file(tmp_path / "f.csv", range(2007, 2019), sale=lambda y: 5 * ends[y] + 1)
        assert run("correlate", tmp_path / "MONO.csv", "--fundamentals", fund, "--out-dir", tmp_path) == 0
        (row,) = read_csv(tmp_path / "correlation.csv")
        assert row["symbol"] == "MONO" and row["n_years"] == "12" and row["error"] == ""
        assert float(row["r_sale"]) == pytest.approx(1.0, abs=1e-12)

    def test_error_rows(self, tmp_path, fbm_csv, capsys):
        two = fundamentals_file(tmp_path / "two.csv", [2001, 2002])
        late = fundamentals_file(tmp_path / "late.csv", [2001, 2002, 2030, 2031])
        second = write_series(tmp_path / "B.csv", gen_fbm(0.5, 2000, 2) + 100)
        rc = run("correlate", fbm_csv, second, "--fundamentals", two, late, "--out-dir", tmp_path)
        assert rc == 4
        rows = read_csv(tmp_path / "correlation.csv")
        assert [r["error"] for r in rows] == ["insufficient-data", "insufficient-overlap"]
        assert rows[1]["r_sale"] == "nan"

    def test_mismatched_counts(self, tmp_path, fbm_csv):
        fund = fundamentals_file(tmp_path / "f.csv", [2001, 2002, 2003])
        assert run("correlate", fbm_csv, fbm_csv, "--fundamentals", fund, "--out-dir", tmp_path) == 2


class TestSynth:
    def test_roundtrip(self, tmp_path):
        out = tmp_path / "fgn.csv"
        assert run("synth", "fgn", "--h", "0.8", "--n", "300", "--seed", "4", "--out", out) == 0
        series = load_price_csv(out)
        from emdscales.synth import gen_fgn

        np.testing.assert_array_equal(series.values, gen_fgn(0.8, 300, 4))
        assert len(series) == 300 and series.symbol == "fgn"

    def test_tone_mix_and_column(self, tmp_path):
        out = tmp_path / "mix.csv"
        rc = run("synth", "tone-mix", "--periods", "8,64", "--amplitudes", "1,2", "--n", "256", "--column", "Adj Close", "--out", out)
        assert rc == 0
        assert len(load_price_csv(out, column="Adj Close")) == 256

    def test_bad_h(self, tmp_path):
        assert run("synth", "fbm", "--h", "1.2", "--out", tmp_path / "x.csv") == 2

    def test_report_on_synth(self, tmp_path):
        out = tmp_path / "fgn8.csv"
        assert run("synth", "fgn", "--h", "0.8", "--n", "2048", "--offset", "0", "--out", out) == 0
        assert run("report", out, "--out-dir", tmp_path) == 0
        assert len(read_csv(tmp_path / "fgn8_report.csv")) >= 5
        assert not (tmp_path / "aggregate_report.csv").exists()


class TestConfigFile:
    def test_values_and_override(self, tmp_path, fbm_csv):
        cfg = tmp_path / "run.conf"
        cfg.write_text("# sifting\ns-number = 3\nformat = json\nno_timestamp = true\n")
        assert run("--config", cfg, "decompose", fbm_csv, "--out-dir", tmp_path / "a") == 0
        payload = json.loads((tmp_path / "a" / "FBM_decomposition.json").read_text())
        assert payload["config"]["s_number"] == 3 and "generated_at" not in payload
        assert run("--config", cfg, "decompose", fbm_csv, "--out-dir", tmp_path / "b", "--s-number", "5") == 0
        payload = json.loads((tmp_path / "b" / "FBM_decomposition.json").read_text())
        assert payload["config"]["s_number"] == 5

    def test_unknown_key(self, tmp_path, fbm_csv):
        cfg = tmp_path / "run.conf"
        cfg.write_text("s_numbr = 3\n")
        assert run("--config", cfg, "decompose", fbm_csv) == 2

    def test_missing_config(self, tmp_path, fbm_csv):
        assert run("--config", tmp_path / "none.conf", "decompose", fbm_csv) == 3


def test_no_timestamp_is_byte_identical(tmp_path, fbm_csv):
    outs = []
    for k in range(2):
        out = tmp_path / str(k)
        for cmd in ("decompose", "report", "horizons"):
            assert run(cmd, fbm_csv, "--out-dir", out, "--format", "json", "--no-timestamp") == 0
        outs.append(out)
    names = sorted(p.name for p in outs[0].iterdir())
    assert names == sorted(p.name for p in outs[1].iterdir()) and len(names) == 3
    for name in names:
        assert (outs[0] / name).read_bytes() == (outs[1] / name).read_bytes()
