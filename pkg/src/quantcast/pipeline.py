"""Pipeline orchestration: configuration, data resolution, stage running,
and artifact emission. The only writer of run directories.

A run directory contains:
    manifest.json          stage statuses and timings
    data.csv               the exact bars the run used
    diagnostics.json       ADF results (raw and differenced)
    acf_pacf.csv           correlogram to lag 40 with the 95% band
    predictions_<model>.csv one row per test-set forecast
    plot_<model>.csv       date, actual, predicted (for plotting)
    plot_merged.csv        wide overlay table, one column per model
    report.json, report.txt  final metric comparison
"""

from __future__ import annotations

import dataclasses
import datetime as dt
import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import diagnostics, ingest, neural, walkforward
from .arima import ArimaOrder
from .errors import QuantcastError
from .neural import LstmConfig, MlpConfig
from .series import PriceSeries, SplitSpec, split
from .walkforward import EvalReport, ForecastRecord, WindowPolicy

__all__ = ["ArimaSettings", "AppConfig", "resolve_data", "run_pipeline",
           "emit_plot_data", "parse_policy"]

logger = logging.getLogger(__name__)

PREDICTION_HEADER = "date,actual,predicted,order_p,order_d,order_q,aic,variance_forecast"


def parse_policy(text: str) -> WindowPolicy:
    """'expanding' or 'rolling:N' -> WindowPolicy."""
    if text == "expanding":
        return WindowPolicy("expanding")
    if text.startswith("rolling:"):
        return WindowPolicy("rolling", int(text.split(":", 1)[1]))
    raise ValueError(f"unknown window policy '{text}' (use expanding or rolling:N)")


@dataclass(frozen=True)
class ArimaSettings:
    d: int = 1
    p_max: int = 4
    q_max: int = 4
    policy: tuple[str, ...] = ("expanding", "rolling:30", "rolling:60")

    def __post_init__(self):
        if isinstance(self.policy, str):
            object.__setattr__(self, "policy", (self.policy,))
        else:
            object.__setattr__(self, "policy", tuple(self.policy))
        for text in self.policy:
            parse_policy(text)
        if not (0 <= self.d <= 2 and self.p_max >= 0 and self.q_max >= 0):
            raise ValueError("invalid arima settings")


KNOWN_MODELS = ("arima", "arima-garch", "lstm", "mlp")


@dataclass(frozen=True)
class AppConfig:
    symbol: str = "NVDA"
    date_range: tuple[dt.date, dt.date] = (dt.date(2019, 4, 12), dt.date(2024, 4, 11))
    split: SplitSpec = field(default_factory=lambda: SplitSpec(0.9, 0.0, 0.1))
    arima: ArimaSettings = field(default_factory=ArimaSettings)
    lstm: LstmConfig = field(default_factory=LstmConfig)
    mlp: MlpConfig = field(default_factory=MlpConfig)
    models: tuple[str, ...] = KNOWN_MODELS
    seed: int = 0
    output_dir: str = "runs"

    def __post_init__(self):
        start, end = self.date_range
        if isinstance(start, str):
            start, end = dt.date.fromisoformat(start), dt.date.fromisoformat(end)
            object.__setattr__(self, "date_range", (start, end))
        if not self.date_range[0] < self.date_range[1]:
            raise ValueError("date_range start must precede end")
        if isinstance(self.models, str):
            object.__setattr__(self, "models", (self.models,))
        else:
            object.__setattr__(self, "models", tuple(self.models))
        if not self.models:
            raise ValueError("at least one model must be enabled")
        for name in self.models:
            if name not in KNOWN_MODELS:
                raise ValueError(f"unknown model '{name}' (choose from {KNOWN_MODELS})")

    def with_seed(self, seed: int) -> "AppConfig":
        lstm = dataclasses.replace(self.lstm, seed=seed)
        mlp = dataclasses.replace(self.mlp, seed=seed)
        return dataclasses.replace(self, seed=seed, lstm=lstm, mlp=mlp)

    def to_json(self) -> str:
        doc = dataclasses.asdict(self)
        doc["date_range"] = [d.isoformat() for d in self.date_range]
        doc["split"] = {"train_fraction": self.split.train_fraction,
                        "validation_fraction": self.split.validation_fraction,
                        "test_fraction": self.split.test_fraction}
        doc["arima"]["policy"] = list(self.arima.policy)
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "AppConfig":
        doc = json.loads(text)
        kwargs = {}
        if "symbol" in doc:
            kwargs["symbol"] = doc["symbol"]
        if "date_range" in doc:
            kwargs["date_range"] = tuple(dt.date.fromisoformat(d)
                                         for d in doc["date_range"])
        if "split" in doc:
            kwargs["split"] = SplitSpec(**doc["split"])
        if "arima" in doc:
            kwargs["arima"] = ArimaSettings(**doc["arima"])
        if "lstm" in doc:
            kwargs["lstm"] = LstmConfig(**doc["lstm"])
        if "mlp" in doc:
            kwargs["mlp"] = MlpConfig(**doc["mlp"])
        if "models" in doc:
            kwargs["models"] = tuple(doc["models"])
        for key in ("seed", "output_dir"):
            if key in doc:
                kwargs[key] = doc[key]
        cfg = cls(**kwargs)
        if "seed" in doc:
            cfg = cfg.with_seed(doc["seed"])
        return cfg


def resolve_data(config: AppConfig, data_path=None) -> list[ingest.OhlcvRow]:
    """Bars for the configured symbol and range.

    Resolution order: explicit CSV path, fetch cache, the packaged
    fixture (when it covers the request), then the network.
    """
    start, end = config.date_range
    if data_path is not None:
        rows = ingest.load_csv(data_path)
        return [r for r in rows if start <= r.date <= end]
    cache = ingest.cache_path(config.symbol, start, end)
    if cache.exists():
        logger.info("using cached bars at %s", cache)
        return ingest.load_csv(cache)
    if (config.symbol.upper() == ingest.BUNDLED_SYMBOL
            and start >= ingest.BUNDLED_RANGE[0] and end <= ingest.BUNDLED_RANGE[1]):
        logger.info("using packaged %s bars", ingest.BUNDLED_SYMBOL)
        return ingest.load_bundled(start, end)
    return ingest.fetch_remote(config.symbol, start, end)


def _fmt(value, places=6) -> str:
    return "" if value is None else f"{value:.{places}f}"


def write_prediction_csv(path, records: list[ForecastRecord]) -> Path:
    """The per-model forecast table; ARIMA-only columns stay empty for
    neural models, variance only filled by the hybrid."""
    path = Path(path)
    with open(path, "w") as fh:
        fh.write(PREDICTION_HEADER + "\n")
        for r in records:
            if isinstance(r.chosen_order, ArimaOrder):
                p, d, q = r.chosen_order
                order_cols = f"{p},{d},{q}"
            else:
                order_cols = ",,"
            fh.write(f"{r.date},{r.actual:.6f},{r.predicted:.6f},{order_cols},"
                     f"{_fmt(r.aic)},{_fmt(r.variance_forecast)}\n")
    return path


def emit_plot_data(records_by_model: dict[str, list[ForecastRecord]],
                   out_dir) -> list[Path]:
    """Per-model (date, actual, predicted) CSVs plus one wide overlay CSV."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, records in records_by_model.items():
        path = out_dir / f"plot_{_slug(name)}.csv"
        with open(path, "w") as fh:
            fh.write("date,actual,predicted\n")
            for r in records:
                fh.write(f"{r.date},{r.actual:.6f},{r.predicted:.6f}\n")
        written.append(path)

    names = list(records_by_model)
    merged = out_dir / "plot_merged.csv"
    with open(merged, "w") as fh:
        fh.write("date,actual," + ",".join(_slug(n) for n in names) + "\n")
        if names:
            base = records_by_model[names[0]]
            for i, rec in enumerate(base):
                preds = ",".join(f"{records_by_model[n][i].predicted:.6f}" for n in names)
                fh.write(f"{rec.date},{rec.actual:.6f},{preds}\n")
    written.append(merged)
    return written


def _slug(name: str) -> str:
    return name.lower().replace(" ", "_").replace("(", "").replace(")", "").replace(":", "-")


def _neural_records(predictions, test_values, test_dates, tag) -> list[ForecastRecord]:
    return [ForecastRecord(date, float(actual), float(pred), chosen_order=tag)
            for date, actual, pred in zip(test_dates, test_values, predictions)]


def run_pipeline(config: AppConfig, data_path=None, run_dir=None) -> Path:
    """Execute the full protocol and write every artifact.

    Stages: ingest -> stationarity diagnostics -> ARIMA walk-forward per
    policy -> hybrid on the best ARIMA policy -> LSTM and MLP -> metrics,
    comparison table, plot data. A stage failure still writes the
    manifest (with the failure recorded) before the error propagates.
    """
    t_start = time.time()
    out_root = Path(config.output_dir)
    if run_dir is None:
        run_dir = out_root / time.strftime("run-%Y%m%d-%H%M%S")
    run_dir = Path(run_dir)
    run_dir.mkdir(parents=True, exist_ok=True)

    manifest = {"config": json.loads(config.to_json()), "stages": {}, "started": _now()}
    records_by_model: dict[str, list[ForecastRecord]] = {}
    reports: list[EvalReport] = []

    def stage(name):
        def wrap(fn):
            t0 = time.time()
            try:
                result = fn()
            except Exception as exc:
                manifest["stages"][name] = {"status": "failed", "error": str(exc),
                                            "seconds": round(time.time() - t0, 3)}
                _write_manifest(run_dir, manifest, t_start)
                raise
            manifest["stages"][name] = {"status": "ok",
                                        "seconds": round(time.time() - t0, 3)}
            return result
        return wrap

    rows = stage("ingest")(lambda: resolve_data(config, data_path))
    if len(rows) < 50:
        manifest["stages"]["ingest"] = {"status": "failed",
                                        "error": f"only {len(rows)} rows"}
        _write_manifest(run_dir, manifest, t_start)
        raise QuantcastError(f"too few rows ({len(rows)}) for the protocol")
    ingest.save_csv(run_dir / "data.csv", rows)
    series = ingest.rows_to_series(config.symbol, rows)

    def run_diagnostics():
        values = series.values
        raw = diagnostics.adf_test(values, regression="c", max_lag="auto")
        diffed = diagnostics.adf_test(np.diff(values), regression="c", max_lag="auto")
        doc = {"adf_raw": _adf_doc(raw), "adf_differenced": _adf_doc(diffed)}
        (run_dir / "diagnostics.json").write_text(json.dumps(doc, indent=2))
        max_lag = min(40, len(values) // 2 - 1)
        acf_raw = diagnostics.acf(np.diff(values), max_lag)
        pacf_raw = diagnostics.pacf(np.diff(values), max_lag)
        with open(run_dir / "acf_pacf.csv", "w") as fh:
            fh.write("lag,acf,pacf,band\n")
            for k in range(max_lag + 1):
                fh.write(f"{k},{acf_raw.values[k]:.6f},{pacf_raw.values[k]:.6f},"
                         f"{acf_raw.conf_band:.6f}\n")
        return doc
    stage("diagnostics")(run_diagnostics)

    train_seg, validation_seg, test_seg = split(series, config.split)
    test_values = test_seg.values
    test_dates = list(test_seg.dates)

    best_arima: tuple[float, str] | None = None
    if "arima" in config.models:
        for policy_text in config.arima.policy:
            policy = parse_policy(policy_text)
            name = f"ARIMA {policy.label}"

            def run_arima(policy=policy, name=name):
                recs = walkforward.walkforward_arima(
                    train_seg.values, test_values, policy, config.arima.d,
                    config.arima.p_max, config.arima.q_max, test_dates=test_dates)
                records_by_model[name] = recs
                reports.append(walkforward.evaluate(name, recs))
                write_prediction_csv(run_dir / f"predictions_{_slug(name)}.csv", recs)
                return reports[-1]
            rep = stage(name)(run_arima)
            if best_arima is None or rep.rmse < best_arima[0]:
                best_arima = (rep.rmse, policy_text)

    if "arima-garch" in config.models:
        def run_hybrid():
            # without plain-ARIMA results fall back to the first policy
            policy_text = best_arima[1] if best_arima else config.arima.policy[0]
            policy = parse_policy(policy_text)
            name = f"ARIMA-GARCH {policy.label}"
            recs = walkforward.walkforward_arima_garch(
                train_seg.values, test_values, policy, config.arima.d,
                config.arima.p_max, config.arima.q_max, test_dates=test_dates)
            records_by_model[name] = recs
            reports.append(walkforward.evaluate(name, recs))
            write_prediction_csv(run_dir / f"predictions_{_slug(name)}.csv", recs)
        stage("arima-garch")(run_hybrid)

    full_values = series.values
    test_start = len(train_seg.values) + (len(validation_seg.values)
                                          if validation_seg is not None else 0)
    for tag, cfg in (("LSTM", config.lstm), ("MLP", config.mlp)):
        if tag.lower() not in config.models:
            continue
        def run_net(tag=tag, cfg=cfg):
            net = neural.train(cfg, train_seg.values,
                               validation_seg.values if validation_seg else None)
            preds = neural.predict_test(net, full_values, test_start)
            recs = _neural_records(preds, test_values, test_dates, tag)
            records_by_model[tag] = recs
            reports.append(walkforward.evaluate(tag, recs))
            write_prediction_csv(run_dir / f"predictions_{_slug(tag)}.csv", recs)
            (run_dir / f"model_{_slug(tag)}.json").write_text(net.to_json())
        stage(tag)(run_net)

    def emit_report():
        table = walkforward.compare(reports)
        (run_dir / "report.txt").write_text(table + "\n")
        doc = {r.model_name: {"mae": r.mae, "rmse": r.rmse,
                              "r_square": r.r_square, "n": r.n}
               for r in reports}
        (run_dir / "report.json").write_text(json.dumps(doc, indent=2))
        emit_plot_data(records_by_model, run_dir)
    stage("report")(emit_report)

    _write_manifest(run_dir, manifest, t_start)
    return run_dir


def _adf_doc(result) -> dict:
    return {"statistic": result.statistic, "p_value": result.p_value,
            "lags_used": result.lags_used, "n_effective": result.n_effective,
            "regression": result.regression}


def _now() -> str:
    return dt.datetime.now(dt.timezone.utc).isoformat(timespec="seconds")


def _write_manifest(run_dir: Path, manifest: dict, t_start: float):
    manifest["finished"] = _now()
    manifest["total_seconds"] = round(time.time() - t_start, 3)
    (run_dir / "manifest.json").write_text(json.dumps(manifest, indent=2))
