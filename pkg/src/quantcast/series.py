"""Core time-series containers and transforms.

Everything downstream (diagnostics, ARIMA/GARCH fitting, neural nets,
walk-forward engines) works on the representations defined here: an
immutable dated price series, differencing with exact inversion,
chronological splitting, min-max scaling and supervised windowing.
"""

from __future__ import annotations

import datetime as dt
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "PriceSeries",
    "DifferencedSeries",
    "SplitSpec",
    "MinMaxNormalizer",
    "SupervisedWindowSet",
    "difference",
    "integrate",
    "split",
    "fit_normalizer",
    "make_windows",
]


def _as_float_array(values) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D sequence, got shape {arr.shape}")
    return arr


def _freeze(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=np.float64, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class PriceSeries:
    """Dated, chronologically ordered positive prices for one symbol."""

    symbol: str
    dates: tuple[dt.date, ...]
    values: np.ndarray

    def __post_init__(self):
        values = _freeze(_as_float_array(self.values))
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "dates", tuple(self.dates))
        if len(self.dates) != len(values):
            raise ValueError(
                f"dates ({len(self.dates)}) and values ({len(values)}) differ in length"
            )
        if len(values) < 2:
            raise ValueError("a price series needs at least 2 observations")
        if not all(isinstance(d, dt.date) for d in self.dates):
            raise ValueError("dates must be datetime.date instances")
        if any(b <= a for a, b in zip(self.dates, self.dates[1:])):
            raise ValueError("dates must be strictly increasing")
        if not np.all(np.isfinite(values)):
            raise ValueError("prices must be finite")
        if np.any(values <= 0.0):
            raise ValueError("prices must be positive")

    def __len__(self) -> int:
        return len(self.values)

    def slice(self, start: int, stop: int) -> "PriceSeries":
        """Contiguous sub-series by positional indices."""
        return PriceSeries(self.symbol, self.dates[start:stop], self.values[start:stop])


@dataclass(frozen=True)
class DifferencedSeries:
    """A d-times differenced series plus the anchors needed to undo it.

    ``anchors`` holds the last ``order`` values of the original series,
    which is enough to reconstruct it backwards from the differences.
    """

    values: np.ndarray
    order: int
    anchors: tuple[float, ...]
    origin_length: int

    def __post_init__(self):
        object.__setattr__(self, "values", _freeze(_as_float_array(self.values)))
        if len(self.anchors) != self.order:
            raise ValueError("anchors must hold exactly `order` original values")
        if len(self.values) != self.origin_length - self.order:
            raise ValueError("length mismatch: |values| must equal origin_length - order")


@dataclass(frozen=True)
class SplitSpec:
    """Chronological train/validation/test fractions; validation may be zero."""

    train_fraction: float
    validation_fraction: float
    test_fraction: float

    def __post_init__(self):
        fracs = (self.train_fraction, self.validation_fraction, self.test_fraction)
        if any(f < 0.0 for f in fracs):
            raise ValueError("fractions must be non-negative")
        if self.train_fraction <= 0.0 or self.test_fraction <= 0.0:
            raise ValueError("train and test fractions must be positive")
        if not math.isclose(sum(fracs), 1.0, rel_tol=0.0, abs_tol=1e-9):
            raise ValueError(f"fractions must sum to 1, got {sum(fracs)!r}")


@dataclass(frozen=True)
class MinMaxNormalizer:
    """Affine map of the fitted [min, max] range onto [0, 1]."""

    fitted_min: float
    fitted_max: float

    def __post_init__(self):
        if not (self.fitted_max > self.fitted_min):
            raise ValueError("degenerate scale: fitted_max must exceed fitted_min")

    @property
    def scale(self) -> float:
        return self.fitted_max - self.fitted_min

    def transform(self, x):
        """Map prices into normalized units. Out-of-range inputs extrapolate."""
        return (np.asarray(x, dtype=np.float64) - self.fitted_min) / self.scale

    def inverse_transform(self, y):
        return np.asarray(y, dtype=np.float64) * self.scale + self.fitted_min


@dataclass(frozen=True)
class SupervisedWindowSet:
    """Overlapping look-back windows paired with next-step targets."""

    look_back: int
    inputs: np.ndarray
    targets: np.ndarray
    target_dates: tuple[dt.date, ...] | None = field(default=None)

    def __post_init__(self):
        inputs = np.asarray(self.inputs, dtype=np.float64)
        targets = _as_float_array(self.targets)
        if inputs.ndim != 2 or inputs.shape[1] != self.look_back:
            raise ValueError("inputs must have shape (n_windows, look_back)")
        if inputs.shape[0] != len(targets):
            raise ValueError("inputs and targets must align")
        inputs = np.array(inputs, copy=True)
        inputs.setflags(write=False)
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "targets", _freeze(targets))
        if self.target_dates is not None and len(self.target_dates) != len(targets):
            raise ValueError("target_dates must align with targets")

    def __len__(self) -> int:
        return len(self.targets)


def difference(values, d: int) -> DifferencedSeries:
    """d-th order forward differences with inversion anchors retained.

    ``d = 0`` returns the series unchanged (empty anchors).
    """
    arr = _as_float_array(values)
    if d < 0:
        raise ValueError("differencing order must be non-negative")
    if len(arr) <= d:
        raise ValueError(f"series of length {len(arr)} cannot be differenced {d} times")
    diffed = np.diff(arr, n=d) if d > 0 else arr
    anchors = tuple(arr[len(arr) - d:]) if d > 0 else ()
    return DifferencedSeries(diffed, d, anchors, len(arr))


def integrate(diffs: DifferencedSeries) -> np.ndarray:
    """Exact inverse of :func:`difference`; returns the full original series."""
    if len(diffs.anchors) != diffs.order:
        raise ValueError("cannot integrate: inversion anchors are missing")
    if diffs.order == 0:
        return np.array(diffs.values, copy=True)
    anchors = np.asarray(diffs.anchors, dtype=np.float64)
    cur = np.asarray(diffs.values, dtype=np.float64)
    for level in range(diffs.order - 1, -1, -1):
        # Last value of the level-k differenced series, from the last
        # original values: sum_i (-1)^i C(k, i) * x[n-1-i].
        k = level
        signs = np.array([(-1.0) ** i * math.comb(k, i) for i in range(k + 1)])
        last = float(np.dot(signs, anchors[::-1][: k + 1]))
        rebuilt = np.empty(len(cur) + 1)
        rebuilt[-1] = last
        # x[t] = x[t+1] - dx[t], walked backwards via a reversed cumulative sum
        rebuilt[:-1] = last - np.cumsum(cur[::-1])[::-1]
        cur = rebuilt
    return cur


def split(series: PriceSeries, spec: SplitSpec):
    """Cut a series into chronological (train, validation, test) segments.

    Boundaries are floors of the cumulative fractions, so the final segment
    absorbs any remainder. The validation segment is ``None`` when its
    fraction is zero; every non-empty segment must get at least 2 points.
    """
    n = len(series)
    i1 = int(math.floor(spec.train_fraction * n))
    i2 = int(math.floor((spec.train_fraction + spec.validation_fraction) * n))
    sizes = {"train": i1, "validation": i2 - i1, "test": n - i2}
    for name, size in sizes.items():
        if name == "validation" and spec.validation_fraction == 0.0:
            continue
        if size < 2:
            raise ValueError(f"degenerate split: {name} segment would get {size} point(s)")
    train = series.slice(0, i1)
    validation = series.slice(i1, i2) if spec.validation_fraction > 0.0 else None
    test = series.slice(i2, n)
    return train, validation, test


def fit_normalizer(values) -> MinMaxNormalizer:
    """Fit min-max bounds. Call with training values only to avoid leakage."""
    arr = _as_float_array(values)
    if len(arr) < 2:
        raise ValueError("need at least 2 values to fit a normalizer")
    lo, hi = float(np.min(arr)), float(np.max(arr))
    if hi <= lo:
        raise ValueError("degenerate scale: all values are identical")
    return MinMaxNormalizer(lo, hi)


def make_windows(values, look_back: int, dates=None) -> SupervisedWindowSet:
    """Supervised windowing: window i is values[i : i+look_back], target values[i+look_back]."""
    arr = _as_float_array(values)
    if look_back < 1:
        raise ValueError("look_back must be at least 1")
    if len(arr) <= look_back:
        raise ValueError(f"need more than look_back={look_back} values, got {len(arr)}")
    n_win = len(arr) - look_back
    idx = np.arange(look_back)[None, :] + np.arange(n_win)[:, None]
    inputs = arr[idx]
    targets = arr[look_back:]
    target_dates = tuple(dates[look_back:]) if dates is not None else None
    return SupervisedWindowSet(look_back, inputs, targets, target_dates)
