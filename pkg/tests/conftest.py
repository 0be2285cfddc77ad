"""Shared fixtures and synthetic-data helpers for the test suite."""

import datetime as dt

import numpy as np
import pytest

from quantcast.ingest import OhlcvRow, load_bundled, rows_to_series, save_csv
from quantcast.neural import LstmConfig, MlpConfig
from quantcast.pipeline import AppConfig, ArimaSettings


@pytest.fixture(scope="session")
def bundled_rows():
    return load_bundled(dt.date(2019, 4, 12), dt.date(2024, 4, 11))


@pytest.fixture(scope="session")
def bundled_series(bundled_rows):
    return rows_to_series("NVDA", bundled_rows)


def simulate_arma(n, phi=(), theta=(), alpha=0.0, sigma=1.0, seed=0, burn=200):
    """Stationary ARMA(p,q) sample path; burn-in discarded."""
    rng = np.random.default_rng(seed)
    p, q = len(phi), len(theta)
    eps = rng.normal(0.0, sigma, n + burn)
    w = np.zeros(n + burn)
    for t in range(n + burn):
        ar = sum(phi[i] * w[t - 1 - i] for i in range(p) if t - 1 - i >= 0)
        ma = sum(theta[j] * eps[t - 1 - j] for j in range(q) if t - 1 - j >= 0)
        w[t] = alpha + ar + ma + eps[t]
    return w[burn:]


def simulate_garch(n, omega, gamma, beta, seed=0, burn=500):
    """GARCH(1,1) innovations with Gaussian shocks; returns (eps, sigma2)."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(n + burn)
    eps = np.zeros(n + burn)
    sig2 = np.zeros(n + burn)
    sig2[0] = omega / (1.0 - gamma - beta)
    eps[0] = np.sqrt(sig2[0]) * z[0]
    for t in range(1, n + burn):
        sig2[t] = omega + gamma * eps[t - 1] ** 2 + beta * sig2[t - 1]
        eps[t] = np.sqrt(sig2[t]) * z[t]
    return eps[burn:], sig2[burn:]


def make_dates(n, start=dt.date(2020, 1, 1)):
    """n strictly increasing calendar dates (weekends included; spacing is irrelevant)."""
    return tuple(start + dt.timedelta(days=i) for i in range(n))


def make_bars(values, start=dt.date(2020, 1, 1)):
    dates = make_dates(len(values), start)
    return [OhlcvRow(date=d, open=float(v), high=float(v) * 1.01,
                     low=float(v) * 0.99, close=float(v),
                     adj_close=float(v), volume=1000 + i)
            for i, (d, v) in enumerate(zip(dates, values))]


@pytest.fixture(scope="session")
def bar_csv(tmp_path_factory):
    """140 synthetic daily bars: enough for a 126/14 split at default fractions."""
    w = simulate_arma(140, phi=(0.4,), alpha=0.2, sigma=0.9, seed=77)
    values = np.cumsum(w) + 150.0
    assert values.min() > 1.0
    path = tmp_path_factory.mktemp("bars") / "synth.csv"
    save_csv(path, make_bars(values))
    return path


def tiny_config(out_dir, **overrides):
    """Pipeline config small enough for end-to-end runs inside a test."""
    base = dict(
        symbol="SYNX",
        date_range=(dt.date(2020, 1, 1), dt.date(2020, 12, 31)),
        arima=ArimaSettings(d=1, p_max=1, q_max=1,
                            policy=("expanding", "rolling:30")),
        lstm=LstmConfig(hidden_units=6, look_back=6, epochs=4,
                        batch_size=16, seed=3),
        mlp=MlpConfig(hidden_layers=2, hidden_units=8, look_back=3, epochs=6,
                      batch_size=8, seed=3),
        output_dir=str(out_dir),
    )
    base.update(overrides)
    return AppConfig(**base)
