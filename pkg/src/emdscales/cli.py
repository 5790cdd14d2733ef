"""Command line interface: ``emdscales {decompose,report,horizons,correlate,synth}``.

Options may also come from a ``key = value`` config file given with
``--config``; keys are option names without the leading dashes (``-`` or
``_`` both accepted) and explicit flags win over the file.

Exit codes: 0 success, 2 usage, 3 I/O, 4 data format, 5 numerical.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .emd import SiftConfig
from .errors import DataFormatError, EmdScalesError, NumericalError, ParameterError
from .export import (
    REPORT_HEADER,
    reconstruction_rows,
    report_rows,
    write_decomposition_csv,
    write_decomposition_json,
    write_json,
    write_profile_csv,
    write_rows_csv,
    write_rs_csv,
)
from .fundamentals import correlate
from .ingest import (
    PriceSeries,
    load_fundamentals_csv,
    load_price_csv,
    log_prices,
    write_price_csv,
)
from .pipeline import AnalysisConfig, aggregate_by_index, analyze
from .spectral import characteristic_timescale
from .synth import KINDS, SynthSpec, business_days, generate

logger = logging.getLogger("emdscales")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_FORMAT = 4
EXIT_NUMERICAL = 5

_BOOL_OPTIONS = {"log", "no_timestamp", "profiles", "rs_tables"}


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, (ParameterError, argparse.ArgumentError)):
        return EXIT_USAGE
    if isinstance(exc, DataFormatError):
        return EXIT_FORMAT
    if isinstance(exc, NumericalError):
        return EXIT_NUMERICAL
    if isinstance(exc, OSError):
        return EXIT_IO
    if isinstance(exc, EmdScalesError):
        return EXIT_NUMERICAL
    return 1


def error_record(exc: BaseException, path=None) -> dict:
    kind = getattr(exc, "kind", None) or ("io" if isinstance(exc, OSError) else type(exc).__name__)
    record = {"error": kind, "message": str(exc), "exit_code": exit_code_for(exc)}
    if path is not None:
        record["input"] = str(path)
    return record


def _emit_error(record: dict) -> None:
    sys.stderr.write(json.dumps(record, sort_keys=True) + "\n")


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def read_config_file(path) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        value = value.strip("\"'")
        if key in _BOOL_OPTIONS:
            out[key] = value.lower() in ("1", "true", "yes", "on")
        else:
            out[key] = value
    return out


def _add_io_options(p: argparse.ArgumentParser, multi: bool = True) -> None:
    p.add_argument("inputs", nargs="+" if multi else 1, metavar="CSV", help="daily price CSV file(s)")
    p.add_argument("--column", default="Close", help="value column (default: Close)")
    p.add_argument("--on-gap", choices=("drop", "strict"), default="drop", help="missing-value policy")
    p.add_argument("--log", action="store_true", help="analyse natural log of prices")
    p.add_argument("--out-dir", default=".", help="output directory")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--no-timestamp", action="store_true", help="omit generated_at from JSON outputs")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for multiple inputs")


def _add_analysis_options(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("sifting")
    g.add_argument("--max-sift-iters", type=int, default=100)
    g.add_argument("--s-number", type=int, default=4)
    g.add_argument("--max-imfs", type=int, default=16)
    g = p.add_argument_group("time scale and Hurst")
    g.add_argument("--trim-frac", type=float, default=0.05)
    g.add_argument("--min-scale", type=int, default=16)
    g.add_argument("--n-scales", type=int, default=20)
    g = p.add_argument_group("classification")
    g.add_argument("--h-boundary", type=float, default=0.65)
    g.add_argument("--tau-boundary-days", type=float, default=90.0)
    g.add_argument("--r2-min", type=float, default=0.9)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="emdscales", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="key = value config file")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="write IMFs and residue")
    _add_io_options(p)
    _add_analysis_options(p)

    p = sub.add_parser("report", help="per-IMF time scale, Hurst exponent, NV and label")
    _add_io_options(p)
    _add_analysis_options(p)
    p.add_argument("--rs-tables", action="store_true", help="also write (l, mean R/S) per IMF")
    p.add_argument("--profiles", action="store_true", help="also write (t, phase, omega) per IMF")

    p = sub.add_parser("horizons", help="write x, x_st and x_lt")
    _add_io_options(p)
    _add_analysis_options(p)

    p = sub.add_parser("correlate", help="correlate x_lt with annual fundamentals")
    _add_io_options(p)
    _add_analysis_options(p)
    p.add_argument("--fundamentals", nargs="+", required=True, help="fundamentals CSV per price input, same order")
    p.add_argument("--method", choices=("pearson", "spearman"), default="pearson")
    p.add_argument("--align", choices=("point", "mean"), default="point")

    p = sub.add_parser("synth", help="generate a synthetic series as a price CSV")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("--n", type=int, default=4096)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--h", type=float, default=0.5, help="Hurst parameter (fgn, fbm)")
    p.add_argument("--period", type=float, default=20.0)
    p.add_argument("--amplitude", type=float, default=1.0)
    p.add_argument("--periods", type=_float_list, default="8,64")
    p.add_argument("--amplitudes", type=_float_list, default=None)
    p.add_argument("--noise-sd", type=float, default=0.0)
    p.add_argument("--slope", type=float, default=1.0)
    p.add_argument("--intercept", type=float, default=0.0)
    p.add_argument("--sd", type=float, default=1.0)
    p.add_argument("--offset", type=float, default=0.0)
    p.add_argument("--column", default="Close")
    p.add_argument("--out", required=True, help="output CSV path")
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    values = read_config_file(known.config)
    subparsers = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    known_keys = set()
    for sp in subparsers.choices.values():
        dests = {a.dest for a in sp._actions}
        known_keys |= dests
        sp.set_defaults(**{k: v for k, v in values.items() if k in dests})
    unknown = sorted(set(values) - known_keys)
    if unknown:
        raise ParameterError(f"{known.config}: unknown option(s) {', '.join(unknown)}")


@dataclass(frozen=True)
class RunConfig:
    """Options shared by the per-file commands."""

    column: str
    on_gap: str
    log: bool
    analysis: AnalysisConfig
    out_dir: Path
    fmt: str
    timestamp: bool

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        sift = SiftConfig(args.max_sift_iters, args.s_number, args.max_imfs)
        if args.n_scales < 4:
            raise ParameterError("--n-scales must be >= 4")
        if not 0 <= args.trim_frac < 0.5:
            raise ParameterError("--trim-frac must lie in [0, 0.5)")
        analysis = AnalysisConfig(
            sift=sift,
            trim_frac=args.trim_frac,
            min_scale=args.min_scale,
            n_scales=args.n_scales,
            h_boundary=args.h_boundary,
            tau_boundary_days=args.tau_boundary_days,
            r2_min=args.r2_min,
        )
        return cls(args.column, args.on_gap, args.log, analysis, Path(args.out_dir), args.format, not args.no_timestamp)


def _load(path, cfg: RunConfig) -> PriceSeries:
    series = load_price_csv(path, cfg.column, cfg.on_gap)
    return log_prices(series) if cfg.log else series


def _analyze_file(path, cfg: RunConfig):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        series = _load(path, cfg)
        return analyze(series, cfg.analysis)


def _safe_worker(path, cfg: RunConfig):
    try:
        return path, _analyze_file(path, cfg), None
    except (EmdScalesError, OSError, ValueError) as exc:
        return path, None, error_record(exc, path)


def _run_each(paths, cfg: RunConfig, jobs: int):
    """Analyse every input; ``(path, analysis or None, error record or None)`` in input order."""
    if jobs > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_safe_worker, paths, [cfg] * len(paths)))
    return [_safe_worker(path, cfg) for path in paths]


def _finish(errors: list[dict], n_inputs: int) -> int:
    for record in errors:
        _emit_error(record)
    if not errors:
        return EXIT_OK
    if n_inputs > 1:
        _emit_error({"summary": {"inputs": n_inputs, "failed": len(errors)}})
    return errors[0]["exit_code"]


def cmd_decompose(args) -> int:
    cfg = RunConfig.from_args(args)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    errors = []
    for path, res, err in _run_each(args.inputs, cfg, args.jobs):
        if err:
            errors.append(err)
            continue
        stem = cfg.out_dir / f"{res.symbol}_decomposition"
        if cfg.fmt == "csv":
            write_decomposition_csv(stem.with_suffix(".csv"), res.decomposition, res.dates)
        else:
            write_decomposition_json(stem.with_suffix(".json"), res.decomposition, res.dates, res.symbol, cfg.timestamp)
        logger.info("%s: %d IMFs", res.symbol, res.decomposition.n_imfs)
    return _finish(errors, len(args.inputs))


AGGREGATE_HEADER = ["imf_index", "n_series", "mean_H", "two_sigma_H", "mean_tau_days", "min_tau_days", "max_tau_days"]


def cmd_report(args) -> int:
    cfg = RunConfig.from_args(args)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    errors, done = [], []
    for path, res, err in _run_each(args.inputs, cfg, args.jobs):
        if err:
            errors.append(err)
            continue
        done.append(res)
        rows = list(report_rows(res.symbol, res.diagnostics, res.labels))
        stem = cfg.out_dir / f"{res.symbol}_report"
        if cfg.fmt == "csv":
            write_rows_csv(stem.with_suffix(".csv"), REPORT_HEADER, rows)
        else:
            write_json(
                stem.with_suffix(".json"),
                {"series_id": res.symbol, "rows": [dict(zip(REPORT_HEADER, r)) for r in rows]},
                cfg.timestamp,
            )
        for diag, imf in zip(res.diagnostics, res.decomposition.imfs):
            if args.rs_tables and diag.hurst is not None:
                write_rs_csv(cfg.out_dir / f"{res.symbol}_imf{diag.imf_index}_rs.csv", diag.hurst)
            if args.profiles:
                try:
                    profile = characteristic_timescale(imf, cfg.analysis.trim_frac)
                except EmdScalesError:
                    continue
                write_profile_csv(cfg.out_dir / f"{res.symbol}_imf{diag.imf_index}_profile.csv", profile, res.dates)

    if len(done) > 1:
        agg = aggregate_by_index(r.diagnostics for r in done)
        rows = [
            [a.imf_index, a.n_series, a.mean_h, a.two_sigma_h, a.mean_tau_days, a.min_tau_days, a.max_tau_days]
            for a in agg
        ]
        if cfg.fmt == "csv":
            write_rows_csv(cfg.out_dir / "aggregate_report.csv", AGGREGATE_HEADER, rows)
        else:
            write_json(
                cfg.out_dir / "aggregate_report.json",
                {"series": [r.symbol for r in done], "rows": [dict(zip(AGGREGATE_HEADER, r)) for r in rows]},
                cfg.timestamp,
            )
    return _finish(errors, len(args.inputs))


def cmd_horizons(args) -> int:
    cfg = RunConfig.from_args(args)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    errors = []
    for path, res, err in _run_each(args.inputs, cfg, args.jobs):
        if err:
            errors.append(err)
            continue
        labels = [
            {"imf_index": d.imf_index, "tau_days": d.tau_days, "H": d.h, "label": str(lab)}
            for d, lab in zip(res.diagnostics, res.labels)
        ]
        thresholds = {
            "h_boundary": cfg.analysis.h_boundary,
            "tau_boundary_days": cfg.analysis.tau_boundary_days,
            "r2_min": cfg.analysis.r2_min,
        }
        stem = cfg.out_dir / f"{res.symbol}_horizons"
        if cfg.fmt == "csv":
            write_rows_csv(
                stem.with_suffix(".csv"),
                ["date", "x", "x_st", "x_lt"],
                reconstruction_rows(res.dates, res.values, res.report),
            )
            write_rows_csv(
                cfg.out_dir / f"{res.symbol}_labels.csv",
                ["imf_index", "tau_days", "H", "label"],
                ([r["imf_index"], r["tau_days"], r["H"], r["label"]] for r in labels),
            )
        else:
            write_json(
                stem.with_suffix(".json"),
                {
                    "series_id": res.symbol,
                    "log_price": cfg.log,
                    "thresholds": thresholds,
                    "labels": labels,
                    "date": [d.isoformat() for d in res.dates],
                    "x": res.values,
                    "x_st": res.report.x_st,
                    "x_lt": res.report.x_lt,
                },
                cfg.timestamp,
            )
    return _finish(errors, len(args.inputs))


CORRELATION_HEADER = ["symbol", "n_years", "r_sale", "r_np", "r_coa", "error"]


def cmd_correlate(args) -> int:
    cfg = RunConfig.from_args(args)
    if len(args.fundamentals) != len(args.inputs):
        raise ParameterError("give one --fundamentals file per price input")
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    errors, rows = [], []
    for (path, res, err), fpath in zip(_run_each(args.inputs, cfg, args.jobs), args.fundamentals):
        if err is None:
            try:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    table = load_fundamentals_csv(fpath, symbol=res.symbol)
                    rep = correlate(res.dates, res.report.x_lt, table, args.method, args.align)
                rows.append([rep.symbol, rep.n_years, rep.r_sale, rep.r_np, rep.r_coa, ""])
                continue
            except (EmdScalesError, OSError) as exc:
                err = error_record(exc, fpath)
        errors.append(err)
        rows.append([Path(path).stem, 0, np.nan, np.nan, np.nan, err["error"]])
    if cfg.fmt == "csv":
        write_rows_csv(cfg.out_dir / "correlation.csv", CORRELATION_HEADER, rows)
    else:
        write_json(
            cfg.out_dir / "correlation.json",
            {"method": args.method, "align": args.align, "rows": [dict(zip(CORRELATION_HEADER, r)) for r in rows]},
            cfg.timestamp,
        )
    return _finish(errors, len(args.inputs))


def cmd_synth(args) -> int:
    params = {"offset": args.offset}
    if args.kind in ("fgn", "fbm"):
        params["h"] = args.h
    elif args.kind == "tone":
        params.update(period=args.period, amplitude=args.amplitude)
    elif args.kind == "tone-mix":
        amplitudes = args.amplitudes if args.amplitudes is not None else [1.0] * len(args.periods)
        params.update(periods=args.periods, amplitudes=amplitudes, noise_sd=args.noise_sd)
    elif args.kind == "trend":
        params.update(slope=args.slope, intercept=args.intercept)
    else:
        params["sd"] = args.sd
    spec = SynthSpec(args.kind, args.n, args.seed, params)
    values = generate(spec)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    series = PriceSeries(out.stem, business_days(args.n), values)
    write_price_csv(series, out, args.column)
    return EXIT_OK


COMMANDS = {
    "decompose": cmd_decompose,
    "report": cmd_report,
    "horizons": cmd_horizons,
    "correlate": cmd_correlate,
    "synth": cmd_synth,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
    except (EmdScalesError, OSError) as exc:
        _emit_error(error_record(exc))
        return exit_code_for(exc) if not isinstance(exc, ParameterError) else EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose, format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (EmdScalesError, OSError, ValueError) as exc:
        _emit_error(error_record(exc))
        return exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main())
