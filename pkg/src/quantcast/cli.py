"""Command-line interface.

Subcommands: fetch, diagnose, backtest, train, run, report. The global
flags --seed, --output-dir and --data are accepted by every subcommand.
"""

from __future__ import annotations

import argparse
import dataclasses
import datetime as dt
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import diagnostics, ingest, neural, pipeline, walkforward
from .errors import QuantcastError
from .pipeline import AppConfig, parse_policy
from .series import split

logger = logging.getLogger(__name__)


def _globals(parser: argparse.ArgumentParser, sub: bool = False):
    # subcommand copies suppress their defaults so an unsupplied flag does
    # not clobber a value parsed before the subcommand name
    default = argparse.SUPPRESS if sub else None
    parser.add_argument("--seed", type=int, default=default,
                        help="seed for every stochastic component")
    parser.add_argument("--output-dir", default=default,
                        help="directory for run artifacts (default: ./runs)")
    parser.add_argument("--data", default=default,
                        help="bar CSV path; overrides fetching and the cache")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quantcast",
        description="Daily price forecasting: ARIMA, ARIMA-GARCH, MLP, LSTM "
                    "with walk-forward evaluation.")
    _globals(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fetch", help="download daily bars and cache them")
    _globals(p, sub=True)
    p.add_argument("--symbol", required=True)
    p.add_argument("--start", required=True)
    p.add_argument("--end", required=True)
    p.add_argument("--endpoint", default=ingest.DEFAULT_ENDPOINT)

    p = sub.add_parser("diagnose", help="stationarity diagnostics on a bar CSV")
    _globals(p, sub=True)
    p.add_argument("--input", default=None, help="bar CSV (default: --data or bundled)")

    p = sub.add_parser("backtest", help="walk-forward backtest of an ARIMA family model")
    _globals(p, sub=True)
    p.add_argument("--model", choices=["arima", "arima-garch"], required=True)
    p.add_argument("--window", default="expanding",
                   help="expanding or rolling:N (default expanding)")
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--p-max", type=int, default=4)
    p.add_argument("--q-max", type=int, default=4)

    p = sub.add_parser("train", help="train a neural forecaster and score the test set")
    _globals(p, sub=True)
    p.add_argument("--model", choices=["lstm", "mlp"], required=True)

    p = sub.add_parser("run", help="run the full comparison pipeline")
    _globals(p, sub=True)
    p.add_argument("--config", default=None, help="AppConfig JSON path")

    p = sub.add_parser("report", help="print the comparison table of a finished run")
    _globals(p, sub=True)
    p.add_argument("--run-dir", required=True)
    return parser


def _load_config(args) -> AppConfig:
    if getattr(args, "config", None):
        config = AppConfig.from_json(Path(args.config).read_text())
    else:
        config = AppConfig()
    if args.output_dir is not None:
        config = dataclasses.replace(config, output_dir=args.output_dir)
    if args.seed is not None:
        config = config.with_seed(args.seed)
    return config


def _series_for(args, config: AppConfig):
    rows = pipeline.resolve_data(config, data_path=args.data)
    if len(rows) < 10:
        raise QuantcastError(f"too few rows ({len(rows)})")
    return ingest.rows_to_series(config.symbol, rows)


def _out_dir(args) -> Path:
    out = Path(args.output_dir) if args.output_dir else Path("runs")
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_fetch(args) -> int:
    start = dt.date.fromisoformat(args.start)
    end = dt.date.fromisoformat(args.end)
    rows = ingest.fetch_remote(args.symbol, start, end, endpoint_url=args.endpoint)
    print(f"fetched {len(rows)} rows for {args.symbol.upper()}")
    if rows:
        print(f"cached at {ingest.cache_path(args.symbol, start, end)}")
    return 0


def cmd_diagnose(args) -> int:
    config = _load_config(args)
    source = args.input or args.data
    if source:
        rows = ingest.load_csv(source)
    else:
        rows = pipeline.resolve_data(config)
    series = ingest.rows_to_series(config.symbol, rows)
    values = series.values
    raw = diagnostics.adf_test(values, regression="c", max_lag="auto")
    diffed = diagnostics.adf_test(np.diff(values), regression="c", max_lag="auto")
    print(f"observations: {len(values)} "
          f"({series.dates[0]} .. {series.dates[-1]})")
    print(f"ADF level:      stat {raw.statistic:+.6f}  p {raw.p_value:.6f}  "
          f"lags {raw.lags_used}")
    print(f"ADF difference: stat {diffed.statistic:+.6f}  p {diffed.p_value:.6f}  "
          f"lags {diffed.lags_used}")
    verdict = "non-stationary level, stationary differences" \
        if raw.p_value > 0.05 and diffed.p_value < 0.05 else "inconclusive"
    print(f"verdict: {verdict}")
    return 0


def cmd_backtest(args) -> int:
    config = _load_config(args)
    series = _series_for(args, config)
    train_seg, _, test_seg = split(series, config.split)
    policy = parse_policy(args.window)
    test_dates = list(test_seg.dates)
    if args.model == "arima":
        records = walkforward.walkforward_arima(
            train_seg.values, test_seg.values, policy, args.d,
            args.p_max, args.q_max, test_dates=test_dates)
        name = f"ARIMA {policy.label}"
    else:
        records = walkforward.walkforward_arima_garch(
            train_seg.values, test_seg.values, policy, args.d,
            args.p_max, args.q_max, test_dates=test_dates)
        name = f"ARIMA-GARCH {policy.label}"
    report = walkforward.evaluate(name, records)
    out = _out_dir(args) / f"predictions_{pipeline._slug(name)}.csv"
    pipeline.write_prediction_csv(out, records)
    print(walkforward.compare([report]))
    print(f"predictions written to {out}")
    return 0


def cmd_train(args) -> int:
    config = _load_config(args)
    series = _series_for(args, config)
    train_seg, validation_seg, test_seg = split(series, config.split)
    cfg = config.lstm if args.model == "lstm" else config.mlp
    net = neural.train(cfg, train_seg.values,
                       validation_seg.values if validation_seg else None)
    test_start = len(series) - len(test_seg.values)
    preds = neural.predict_test(net, series.values, test_start)
    name = args.model.upper()
    records = pipeline._neural_records(preds, test_seg.values,
                                       list(test_seg.dates), name)
    report = walkforward.evaluate(name, records)
    out_dir = _out_dir(args)
    pipeline.write_prediction_csv(out_dir / f"predictions_{pipeline._slug(name)}.csv",
                                  records)
    (out_dir / f"model_{pipeline._slug(name)}.json").write_text(net.to_json())
    print(walkforward.compare([report]))
    print(f"artifacts written to {out_dir}")
    return 0


def cmd_run(args) -> int:
    config = _load_config(args)
    run_dir = pipeline.run_pipeline(config, data_path=args.data)
    print(f"run directory: {run_dir}")
    print((run_dir / "report.txt").read_text())
    return 0


def cmd_report(args) -> int:
    run_dir = Path(args.run_dir)
    report_txt = run_dir / "report.txt"
    if not report_txt.exists():
        raise QuantcastError(f"{run_dir} has no report.txt (incomplete run?)")
    print(report_txt.read_text().rstrip())
    doc = json.loads((run_dir / "report.json").read_text())
    worst = min(doc.values(), key=lambda d: d["r_square"])
    print(f"\nmodels: {len(doc)}; lowest R2 {worst['r_square']:.4f}")
    return 0


COMMANDS = {
    "fetch": cmd_fetch,
    "diagnose": cmd_diagnose,
    "backtest": cmd_backtest,
    "train": cmd_train,
    "run": cmd_run,
    "report": cmd_report,
}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (QuantcastError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
