"""Configuration, data resolution, artifact emission, and reduced end-to-end
pipeline runs on a small synthetic bar file."""

import csv
import datetime as dt
import json
import math

import numpy as np
import pytest

import quantcast.pipeline as pl
from quantcast import ingest
from quantcast.arima import ArimaOrder
from quantcast.errors import QuantcastError
from quantcast.neural import LstmConfig, MlpConfig, TrainedNet
from quantcast.pipeline import (
    KNOWN_MODELS,
    PREDICTION_HEADER,
    AppConfig,
    ArimaSettings,
    emit_plot_data,
    parse_policy,
    resolve_data,
    run_pipeline,
    write_prediction_csv,
)
from quantcast.series import SplitSpec
from quantcast.walkforward import ForecastRecord

from .conftest import make_bars, make_dates, tiny_config


class TestParsePolicy:
    def test_expanding(self):
        policy = parse_policy("expanding")
        assert policy.kind == "expanding" and policy.label == "expanding"

    def test_rolling(self):
        policy = parse_policy("rolling:45")
        assert policy.kind == "rolling" and policy.size == 45

    @pytest.mark.parametrize("text", ["weekly", "rolling", "ROLLING:30", ""])
    def test_rejects_unknown(self, text):
        with pytest.raises(ValueError, match="unknown window policy"):
            parse_policy(text)


class TestArimaSettings:
    def test_string_policy_coerced_to_tuple(self):
        assert ArimaSettings(policy="expanding").policy == ("expanding",)

    def test_list_policy_coerced_to_tuple(self):
        settings = ArimaSettings(policy=["expanding", "rolling:30"])
        assert settings.policy == ("expanding", "rolling:30")

    def test_rejects_bad_policy(self):
        with pytest.raises(ValueError, match="unknown window policy"):
            ArimaSettings(policy=("expanding", "monthly"))

    def test_rejects_bad_bounds(self):
        with pytest.raises(ValueError, match="invalid arima settings"):
            ArimaSettings(d=3)
        with pytest.raises(ValueError, match="invalid arima settings"):
            ArimaSettings(p_max=-1)


class TestAppConfig:
    def test_defaults(self):
        config = AppConfig()
        assert config.date_range == (dt.date(2019, 4, 12), dt.date(2024, 4, 11))
        assert config.split == SplitSpec(0.9, 0.0, 0.1)
        assert config.models == KNOWN_MODELS

    def test_string_dates_coerced(self):
        config = AppConfig(date_range=("2020-01-01", "2020-06-30"))
        assert config.date_range == (dt.date(2020, 1, 1), dt.date(2020, 6, 30))

    def test_rejects_reversed_range(self):
        with pytest.raises(ValueError, match="precede"):
            AppConfig(date_range=("2021-01-01", "2020-01-01"))

    def test_models_string_coerced(self):
        assert AppConfig(models="arima").models == ("arima",)

    def test_rejects_unknown_model(self):
        with pytest.raises(ValueError, match="unknown model 'sarimax'"):
            AppConfig(models=("arima", "sarimax"))

    def test_rejects_empty_models(self):
        with pytest.raises(ValueError, match="at least one model"):
            AppConfig(models=())

    def test_with_seed_reaches_networks(self):
        config = AppConfig().with_seed(11)
        assert config.seed == 11
        assert config.lstm.seed == 11 and config.mlp.seed == 11

    def test_json_round_trip(self):
        config = AppConfig(
            symbol="msft",
            date_range=("2021-02-01", "2022-02-01"),
            split=SplitSpec(0.8, 0.1, 0.1),
            arima=ArimaSettings(d=1, p_max=2, q_max=1, policy=("rolling:45",)),
            lstm=LstmConfig(hidden_units=12, epochs=9),
            mlp=MlpConfig(hidden_units=7, epochs=5),
            models=("arima", "mlp"),
            output_dir="elsewhere",
        ).with_seed(7)
        assert AppConfig.from_json(config.to_json()) == config

    def test_from_json_defaults(self):
        assert AppConfig.from_json("{}") == AppConfig()

    def test_from_json_seed_propagates(self):
        config = AppConfig.from_json('{"seed": 9}')
        assert config.lstm.seed == 9 and config.mlp.seed == 9


class TestResolveData:
    def test_explicit_path_filters_range(self, bar_csv, monkeypatch, tmp_path):
        monkeypatch.setenv("QUANTCAST_CACHE_DIR", str(tmp_path))
        config = tiny_config(tmp_path,
                             date_range=(dt.date(2020, 2, 1), dt.date(2020, 3, 1)))
        rows = resolve_data(config, data_path=bar_csv)
        expected = [r for r in ingest.load_csv(bar_csv)
                    if dt.date(2020, 2, 1) <= r.date <= dt.date(2020, 3, 1)]
        assert rows == expected and 0 < len(rows) < 140

    def test_cache_wins_over_bundled(self, monkeypatch, tmp_path):
        monkeypatch.setenv("QUANTCAST_CACHE_DIR", str(tmp_path))
        start, end = dt.date(2023, 1, 3), dt.date(2023, 1, 31)
        sentinel = make_bars(np.full(5, 777.0), start=start)
        ingest.save_csv(ingest.cache_path("NVDA", start, end), sentinel)
        config = tiny_config(tmp_path, symbol="NVDA", date_range=(start, end))
        rows = resolve_data(config)
        assert [r.adj_close for r in rows] == [777.0] * 5

    def test_bundled_serves_covered_range(self, monkeypatch, tmp_path):
        monkeypatch.setenv("QUANTCAST_CACHE_DIR", str(tmp_path))  # empty cache
        start, end = dt.date(2023, 1, 3), dt.date(2023, 6, 30)
        config = tiny_config(tmp_path, symbol="nvda", date_range=(start, end))
        rows = resolve_data(config)
        assert rows == ingest.load_bundled(start, end) and rows

    def test_falls_back_to_remote(self, monkeypatch, tmp_path):
        monkeypatch.setenv("QUANTCAST_CACHE_DIR", str(tmp_path))
        canned = make_bars(np.full(3, 50.0))
        calls = []

        def fake_fetch(symbol, start, end, **kwargs):
            calls.append((symbol, start, end))
            return canned

        monkeypatch.setattr(pl.ingest, "fetch_remote", fake_fetch)
        config = tiny_config(tmp_path, symbol="ZZZT",
                             date_range=(dt.date(2020, 1, 1), dt.date(2020, 2, 1)))
        assert resolve_data(config) == canned
        assert calls == [("ZZZT", dt.date(2020, 1, 1), dt.date(2020, 2, 1))]


class TestWritePredictionCsv:
    def test_arima_and_neural_rows(self, tmp_path):
        records = [
            ForecastRecord(dt.date(2024, 1, 2), 10.0, 10.5,
                           chosen_order=ArimaOrder(2, 1, 1), aic=-12.25,
                           variance_forecast=None),
            ForecastRecord(dt.date(2024, 1, 3), 11.0, 10.9, chosen_order="LSTM"),
        ]
        path = write_prediction_csv(tmp_path / "p.csv", records)
        lines = path.read_text().splitlines()
        assert lines[0] == PREDICTION_HEADER
        rows = list(csv.DictReader(lines))
        assert rows[0]["order_p"] == "2" and rows[0]["order_d"] == "1"
        assert rows[0]["order_q"] == "1"
        assert rows[0]["aic"] == "-12.250000" and rows[0]["variance_forecast"] == ""
        assert rows[1]["order_p"] == "" and rows[1]["order_q"] == ""
        assert rows[1]["aic"] == "" and rows[1]["variance_forecast"] == ""
        assert rows[1]["predicted"] == "10.900000"

    def test_empty_records_header_only(self, tmp_path):
        path = write_prediction_csv(tmp_path / "p.csv", [])
        assert path.read_text() == PREDICTION_HEADER + "\n"


class TestEmitPlotData:
    @staticmethod
    def records(n, offset):
        dates = make_dates(n, start=dt.date(2024, 2, 1))
        return [ForecastRecord(d, 100.0 + i, 100.0 + i + offset)
                for i, d in enumerate(dates)]

    def test_per_model_and_merged(self, tmp_path):
        by_model = {"ARIMA expanding": self.records(5, 0.25),
                    "LSTM": self.records(5, -0.5)}
        written = emit_plot_data(by_model, tmp_path)
        assert {p.name for p in written} == {"plot_arima_expanding.csv",
                                             "plot_lstm.csv", "plot_merged.csv"}
        single = (tmp_path / "plot_lstm.csv").read_text().splitlines()
        assert single[0] == "date,actual,predicted" and len(single) == 6
        assert single[1] == "2024-02-01,100.000000,99.500000"
        merged = (tmp_path / "plot_merged.csv").read_text().splitlines()
        assert merged[0] == "date,actual,arima_expanding,lstm"
        assert len(merged) == 6
        assert merged[1] == "2024-02-01,100.000000,100.250000,99.500000"

    def test_empty_records_header_only(self, tmp_path):
        emit_plot_data({"MLP": []}, tmp_path)
        assert (tmp_path / "plot_mlp.csv").read_text() == "date,actual,predicted\n"
        assert (tmp_path / "plot_merged.csv").read_text() == "date,actual,mlp\n"


class TestSlug:
    @pytest.mark.parametrize("name,slug", [
        ("ARIMA expanding", "arima_expanding"),
        ("ARIMA rolling-30", "arima_rolling-30"),
        ("ARIMA-GARCH expanding", "arima-garch_expanding"),
        ("LSTM", "lstm"),
    ])
    def test_slug(self, name, slug):
        assert pl._slug(name) == slug


@pytest.fixture(scope="session")
def full_run(bar_csv, tmp_path_factory):
    out = tmp_path_factory.mktemp("full-run")
    config = tiny_config(out)
    run_dir = run_pipeline(config, data_path=bar_csv, run_dir=out / "r1")
    return config, run_dir


@pytest.mark.slow
class TestFullRun:
    # 140 bars -> 126 train / 14 test
    ARIMA_NAMES = ("ARIMA expanding", "ARIMA rolling-30")

    def test_returns_given_run_dir(self, full_run):
        _, run_dir = full_run
        assert run_dir.name == "r1" and run_dir.is_dir()

    def test_manifest(self, full_run):
        config, run_dir = full_run
        manifest = json.loads((run_dir / "manifest.json").read_text())
        expected = {"ingest", "diagnostics", "ARIMA expanding",
                    "ARIMA rolling-30", "arima-garch", "LSTM", "MLP", "report"}
        assert set(manifest["stages"]) == expected
        assert all(s["status"] == "ok" and s["seconds"] >= 0
                   for s in manifest["stages"].values())
        assert manifest["config"]["symbol"] == "SYNX"
        assert manifest["total_seconds"] > 0
        assert manifest["started"] <= manifest["finished"]

    def test_data_csv_reproduces_input(self, full_run, bar_csv):
        _, run_dir = full_run
        assert ingest.load_csv(run_dir / "data.csv") == ingest.load_csv(bar_csv)

    def test_diagnostics_json(self, full_run):
        _, run_dir = full_run
        doc = json.loads((run_dir / "diagnostics.json").read_text())
        assert set(doc) == {"adf_raw", "adf_differenced"}
        for entry in doc.values():
            assert entry["regression"] == "c"
            assert math.isfinite(entry["statistic"])
            assert 0.0 < entry["p_value"] < 1.0
        assert doc["adf_differenced"]["p_value"] < 0.05

    def test_correlogram_csv(self, full_run):
        _, run_dir = full_run
        lines = (run_dir / "acf_pacf.csv").read_text().splitlines()
        assert lines[0] == "lag,acf,pacf,band"
        assert len(lines) == 42  # header + lags 0..40
        lag0 = lines[1].split(",")
        assert lag0[0] == "0" and lag0[1] == "1.000000" and lag0[2] == "1.000000"
        band = float(lag0[3])
        assert band == pytest.approx(1.96 / math.sqrt(139), abs=1e-6)

    def expected_test_values(self, bar_csv):
        closes = [r.adj_close for r in ingest.load_csv(bar_csv)]
        return closes[126:]

    def test_prediction_files(self, full_run, bar_csv):
        _, run_dir = full_run
        hybrids = list(run_dir.glob("predictions_arima-garch_*.csv"))
        assert len(hybrids) == 1
        expected_actuals = self.expected_test_values(bar_csv)
        for name in self.ARIMA_NAMES:
            path = run_dir / f"predictions_{pl._slug(name)}.csv"
            rows = list(csv.DictReader(path.read_text().splitlines()))
            assert len(rows) == 14
            assert [float(r["actual"]) for r in rows] == pytest.approx(expected_actuals)
            assert all(r["order_d"] == "1" for r in rows)
            assert all(float(r["aic"]) for r in rows)
            assert all(r["variance_forecast"] == "" for r in rows)
        for tag in ("lstm", "mlp"):
            rows = list(csv.DictReader(
                (run_dir / f"predictions_{tag}.csv").read_text().splitlines()))
            assert len(rows) == 14
            assert all(r["order_p"] == "" and r["aic"] == "" for r in rows)
        hybrid_rows = list(csv.DictReader(hybrids[0].read_text().splitlines()))
        assert all(float(r["variance_forecast"]) > 0 for r in hybrid_rows)

    def test_report_json(self, full_run):
        _, run_dir = full_run
        doc = json.loads((run_dir / "report.json").read_text())
        assert len(doc) == 5
        names = set(doc)
        assert set(self.ARIMA_NAMES) | {"LSTM", "MLP"} <= names
        hybrid = names - set(self.ARIMA_NAMES) - {"LSTM", "MLP"}
        assert len(hybrid) == 1 and next(iter(hybrid)).startswith("ARIMA-GARCH ")
        for entry in doc.values():
            assert entry["n"] == 14
            assert entry["rmse"] >= entry["mae"] > 0

    def test_report_txt(self, full_run):
        _, run_dir = full_run
        text = (run_dir / "report.txt").read_text()
        lines = text.splitlines()
        assert lines[0].startswith("Model") and set(lines[1]) == {"-"}
        assert len(lines) == 7  # header + rule + 5 models
        assert text.endswith("\n")

    def test_plot_files(self, full_run):
        _, run_dir = full_run
        merged = (run_dir / "plot_merged.csv").read_text().splitlines()
        header = merged[0].split(",")
        assert header[:2] == ["date", "actual"] and len(header) == 7
        assert len(merged) == 15
        per_model = sorted(p.name for p in run_dir.glob("plot_*.csv")
                           if p.name != "plot_merged.csv")
        assert len(per_model) == 5
        first = (run_dir / per_model[0]).read_text().splitlines()
        assert len(first) == 15

    def test_model_artifacts(self, full_run):
        _, run_dir = full_run
        lstm = TrainedNet.from_json((run_dir / "model_lstm.json").read_text())
        mlp = TrainedNet.from_json((run_dir / "model_mlp.json").read_text())
        assert lstm.kind == "LSTM" and lstm.config.hidden_units == 6
        assert mlp.kind == "MLP" and mlp.config.hidden_units == 8
        assert lstm.normalizer is not None
        assert len(lstm.training_history["train_loss"]) == 4


@pytest.mark.slow
class TestReducedRuns:
    def test_single_model_single_policy(self, bar_csv, tmp_path):
        # only one model enabled -> one-row comparison table
        config = tiny_config(tmp_path, models=("arima",),
                             arima=ArimaSettings(d=1, p_max=1, q_max=1,
                                                 policy=("expanding",)))
        run_dir = run_pipeline(config, data_path=bar_csv, run_dir=tmp_path / "solo")
        doc = json.loads((run_dir / "report.json").read_text())
        assert list(doc) == ["ARIMA expanding"]
        lines = (run_dir / "report.txt").read_text().splitlines()
        assert len(lines) == 3  # header + rule + single row
        manifest = json.loads((run_dir / "manifest.json").read_text())
        assert set(manifest["stages"]) == {"ingest", "diagnostics",
                                           "ARIMA expanding", "report"}
        assert not (run_dir / "predictions_lstm.csv").exists()
        assert not (run_dir / "model_mlp.json").exists()

    def test_hybrid_without_plain_arima(self, bar_csv, tmp_path):
        # hybrid alone falls back to the first configured policy
        config = tiny_config(tmp_path, models=("arima-garch",),
                             arima=ArimaSettings(d=1, p_max=1, q_max=0,
                                                 policy=("rolling:40",)))
        run_dir = run_pipeline(config, data_path=bar_csv, run_dir=tmp_path / "hy")
        doc = json.loads((run_dir / "report.json").read_text())
        assert list(doc) == ["ARIMA-GARCH rolling-40"]

    def test_repeat_runs_identical(self, bar_csv, tmp_path):
        outputs = []
        for tag in ("a", "b"):
            config = tiny_config(tmp_path, models=("mlp",))
            run_dir = run_pipeline(config, data_path=bar_csv,
                                   run_dir=tmp_path / tag)
            outputs.append(run_dir)
        for name in ("predictions_mlp.csv", "report.json", "model_mlp.json"):
            assert (outputs[0] / name).read_bytes() == (outputs[1] / name).read_bytes()

    def test_stage_failure_recorded_in_manifest(self, bar_csv, tmp_path, monkeypatch):
        def boom(*args, **kwargs):
            raise RuntimeError("boom")

        monkeypatch.setattr(pl.diagnostics, "adf_test", boom)
        config = tiny_config(tmp_path, models=("arima",))
        with pytest.raises(RuntimeError, match="boom"):
            run_pipeline(config, data_path=bar_csv, run_dir=tmp_path / "fail")
        manifest = json.loads((tmp_path / "fail" / "manifest.json").read_text())
        assert manifest["stages"]["ingest"]["status"] == "ok"
        diag = manifest["stages"]["diagnostics"]
        assert diag["status"] == "failed" and "boom" in diag["error"]

    def test_too_few_rows_aborts(self, tmp_path):
        small = tmp_path / "small.csv"
        ingest.save_csv(small, make_bars(np.full(30, 90.0)))
        config = tiny_config(tmp_path, models=("arima",))
        with pytest.raises(QuantcastError, match="too few rows"):
            run_pipeline(config, data_path=small, run_dir=tmp_path / "tiny")
        manifest = json.loads((tmp_path / "tiny" / "manifest.json").read_text())
        assert manifest["stages"]["ingest"]["status"] == "failed"
        assert "30 rows" in manifest["stages"]["ingest"]["error"]
