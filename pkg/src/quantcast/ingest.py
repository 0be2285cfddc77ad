"""Data ingestion: remote daily-bar client, CSV persistence, caching.

The remote client speaks the chart-JSON schema (timestamp array plus
quote/adjclose arrays) and caches every successful fetch as a CSV so
later runs are offline-reproducible. All CSV I/O uses one fixed header
and formatting, so parse -> re-emit is the identity.
"""

from __future__ import annotations

import datetime as dt
import json
import logging
import os
import time
import urllib.error
import urllib.request
from dataclasses import dataclass
from pathlib import Path

from .errors import DataError
from .series import PriceSeries

__all__ = [
    "OhlcvRow",
    "CSV_HEADER",
    "load_csv",
    "save_csv",
    "fetch_remote",
    "cache_path",
    "rows_to_series",
    "load_bundled",
    "BUNDLED_SYMBOL",
    "BUNDLED_RANGE",
]

logger = logging.getLogger(__name__)

CSV_HEADER = "date,open,high,low,close,adj_close,volume"
DEFAULT_ENDPOINT = "https://query1.finance.yahoo.com"
RETRIES = 3
BACKOFF_START = 1.0

BUNDLED_SYMBOL = "NVDA"
BUNDLED_RANGE = (dt.date(2019, 4, 12), dt.date(2024, 4, 11))


@dataclass(frozen=True)
class OhlcvRow:
    date: dt.date
    open: float
    high: float
    low: float
    close: float
    adj_close: float
    volume: int

    def __post_init__(self):
        for name in ("open", "high", "low", "close", "adj_close"):
            if not (getattr(self, name) > 0):
                raise ValueError(f"{name} must be positive")
        if self.volume < 0:
            raise ValueError("volume must be non-negative")


def cache_path(symbol: str, start: dt.date, end: dt.date) -> Path:
    root = os.environ.get("QUANTCAST_CACHE_DIR")
    base = Path(root) if root else Path.home() / ".cache" / "quantcast"
    return base / f"{symbol.upper()}_{start.isoformat()}_{end.isoformat()}.csv"


def load_csv(path) -> list[OhlcvRow]:
    """Parse and validate a daily-bar CSV; rows come back date-sorted."""
    path = Path(path)
    with open(path) as fh:
        return _parse_bar_lines(fh.read().splitlines(), str(path))


def _parse_bar_lines(lines: list[str], origin: str) -> list[OhlcvRow]:
    path = origin
    if not lines or lines[0] != CSV_HEADER:
        raise DataError(f"{path}: header must be exactly '{CSV_HEADER}'")
    rows = []
    seen: dict[dt.date, int] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 7:
            raise DataError(f"{path}:{lineno}: expected 7 fields, got {len(parts)}")
        try:
            row = OhlcvRow(
                date=dt.date.fromisoformat(parts[0]),
                open=float(parts[1]), high=float(parts[2]), low=float(parts[3]),
                close=float(parts[4]), adj_close=float(parts[5]),
                volume=int(parts[6]),
            )
        except ValueError as exc:
            raise DataError(f"{path}:{lineno}: {exc}") from exc
        if row.date in seen:
            raise DataError(
                f"{path}:{lineno}: duplicate date {row.date} (first at line {seen[row.date]})")
        seen[row.date] = lineno
        rows.append(row)
    rows.sort(key=lambda r: r.date)
    return rows


def save_csv(path, rows: list[OhlcvRow]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        fh.write(CSV_HEADER + "\n")
        for r in rows:
            fh.write(f"{r.date.isoformat()},{r.open:.6f},{r.high:.6f},{r.low:.6f},"
                     f"{r.close:.6f},{r.adj_close:.6f},{r.volume}\n")
    return path


def _require(mapping, key, context):
    if key not in mapping or mapping[key] is None:
        raise DataError(f"chart response is missing field '{key}' in {context}")
    return mapping[key]


def parse_chart_json(payload: dict, start: dt.date, end: dt.date) -> list[OhlcvRow]:
    """Rows from a chart-JSON document; rows with any null field are dropped."""
    chart = _require(payload, "chart", "document root")
    results = _require(chart, "result", "chart")
    if not results:
        raise DataError("chart response has an empty result list")
    result = results[0]
    timestamps = _require(result, "timestamp", "result[0]")
    indicators = _require(result, "indicators", "result[0]")
    quote = _require(indicators, "quote", "indicators")[0]
    adj = _require(indicators, "adjclose", "indicators")[0]
    adj_close = _require(adj, "adjclose", "adjclose[0]")
    columns = {name: _require(quote, name, "quote[0]")
               for name in ("open", "high", "low", "close", "volume")}

    rows = []
    for i, ts in enumerate(timestamps):
        day = dt.datetime.fromtimestamp(ts, dt.timezone.utc).date()
        if day < start or day > end:
            continue
        fields = [columns["open"][i], columns["high"][i], columns["low"][i],
                  columns["close"][i], adj_close[i], columns["volume"][i]]
        if any(v is None for v in fields):
            logger.info("dropping %s: null field in remote data", day)
            continue
        rows.append(OhlcvRow(day, float(fields[0]), float(fields[1]),
                             float(fields[2]), float(fields[3]), float(fields[4]),
                             int(fields[5])))
    rows.sort(key=lambda r: r.date)
    return rows


def fetch_remote(symbol: str, start: dt.date, end: dt.date,
                 endpoint_url: str = DEFAULT_ENDPOINT) -> list[OhlcvRow]:
    """Fetch daily bars and cache them as CSV.

    Transport failures are retried 3 times with exponential backoff
    starting at 1 s. An empty date range returns an empty list without
    touching the network.
    """
    if start > end:
        return []
    period1 = int(dt.datetime.combine(start, dt.time.min, dt.timezone.utc).timestamp())
    period2 = int(dt.datetime.combine(end + dt.timedelta(days=1), dt.time.min,
                                      dt.timezone.utc).timestamp())
    url = (f"{endpoint_url.rstrip('/')}/v8/finance/chart/{symbol}"
           f"?period1={period1}&period2={period2}&interval=1d&events=div%2Csplit")

    last_error: Exception | None = None
    for attempt in range(RETRIES):
        try:
            req = urllib.request.Request(url, headers={"User-Agent": "quantcast/0.1"})
            with urllib.request.urlopen(req, timeout=30) as resp:
                payload = json.loads(resp.read().decode("utf-8"))
            break
        except (urllib.error.URLError, OSError, json.JSONDecodeError) as exc:
            last_error = exc
            if attempt < RETRIES - 1:
                delay = BACKOFF_START * (2 ** attempt)
                logger.warning("fetch attempt %d failed (%s); retrying in %.0fs",
                               attempt + 1, exc, delay)
                time.sleep(delay)
    else:
        raise DataError(f"could not fetch {symbol} after {RETRIES} attempts: {last_error}")

    rows = parse_chart_json(payload, start, end)
    save_csv(cache_path(symbol, start, end), rows)
    return rows


def rows_to_series(symbol: str, rows: list[OhlcvRow]) -> PriceSeries:
    """Adjusted-close series (the price the whole pipeline models)."""
    return PriceSeries(symbol=symbol.upper(),
                       dates=tuple(r.date for r in rows),
                       values=[r.adj_close for r in rows])


def load_bundled(start: dt.date | None = None,
                 end: dt.date | None = None) -> list[OhlcvRow]:
    """The packaged daily-bar fixture, optionally sliced to a date range."""
    from importlib.resources import files

    text = files("quantcast.data").joinpath("nvda_daily.csv").read_text()
    rows = _parse_bar_lines(text.splitlines(), "bundled nvda_daily.csv")
    if start is not None:
        rows = [r for r in rows if r.date >= start]
    if end is not None:
        rows = [r for r in rows if r.date <= end]
    return rows
