"""Walk-forward evaluation engines and the comparison metrics.

Each engine steps through the test set in order: build the history the
window policy allows, select an order by AIC grid search, forecast one
step, record it, then append the realized actual. No future value can
reach a forecast because the history buffer only ever contains past
observations.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from . import arima, garch
from .arima import ArimaOrder
from .errors import FitError, NoModelError, WalkForwardAborted
from .series import _as_float_array

__all__ = [
    "WindowPolicy",
    "ForecastRecord",
    "EvalReport",
    "mae",
    "rmse",
    "r_square",
    "walkforward_arima",
    "walkforward_arima_garch",
    "evaluate",
    "compare",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WindowPolicy:
    """History policy: everything so far, or only the trailing `size`."""

    kind: str  # "expanding" | "rolling"
    size: int | None = None

    def __post_init__(self):
        if self.kind not in ("expanding", "rolling"):
            raise ValueError("kind must be 'expanding' or 'rolling'")
        if self.kind == "rolling":
            if self.size is None or self.size < 20:
                raise ValueError("rolling windows need size >= 20 observations")
        elif self.size is not None:
            raise ValueError("expanding policy takes no size")

    @property
    def label(self) -> str:
        return "expanding" if self.kind == "expanding" else f"rolling-{self.size}"


@dataclass(frozen=True)
class ForecastRecord:
    date: object  # datetime.date in the app; any sortable label here
    actual: float
    predicted: float
    chosen_order: ArimaOrder | str | None = None
    aic: float | None = None
    variance_forecast: float | None = None
    fallback: bool = field(default=False)

    def __post_init__(self):
        if not (math.isfinite(self.actual) and math.isfinite(self.predicted)):
            raise ValueError("actual and predicted must be finite")


@dataclass(frozen=True)
class EvalReport:
    model_name: str
    mae: float
    rmse: float
    r_square: float
    n: int

    def __post_init__(self):
        if self.rmse < self.mae:
            raise ValueError("rmse below mae: metrics are inconsistent")
        if self.r_square > 1.0:
            raise ValueError("r_square cannot exceed 1")


def _paired(actuals, predictions):
    y = _as_float_array(actuals)
    yhat = _as_float_array(predictions)
    if len(y) == 0 or len(y) != len(yhat):
        raise ValueError("actuals and predictions must be equal-length and non-empty")
    return y, yhat


def mae(actuals, predictions) -> float:
    y, yhat = _paired(actuals, predictions)
    return float(np.mean(np.abs(y - yhat)))


def rmse(actuals, predictions) -> float:
    y, yhat = _paired(actuals, predictions)
    return float(np.sqrt(np.mean((y - yhat) ** 2)))


def r_square(actuals, predictions) -> float:
    """1 - SS_res / SS_tot, with SS_tot about the mean of the actuals."""
    y, yhat = _paired(actuals, predictions)
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    if ss_tot == 0.0:
        raise ValueError("r_square undefined: actuals are constant")
    ss_res = float(np.sum((y - yhat) ** 2))
    return 1.0 - ss_res / ss_tot


def _history_view(buffer: list[float], policy: WindowPolicy) -> np.ndarray:
    if policy.kind == "rolling":
        return np.array(buffer[-policy.size:])
    return np.array(buffer)


def _check_policy(train, policy: WindowPolicy):
    if policy.kind == "rolling" and len(train) < policy.size:
        raise ValueError(f"training data shorter than rolling size {policy.size}")


def _grid_budget(policy: WindowPolicy) -> float | None:
    # keep the largest candidate identifiable on a short window
    return policy.size / 3 if policy.kind == "rolling" else None


def walkforward_arima(train, test, policy: WindowPolicy, d: int,
                      p_max: int, q_max: int, *, test_dates=None,
                      reselect: bool = True) -> list[ForecastRecord]:
    """One-step-ahead ARIMA walk-forward over the test set.

    The (p, q) order is re-selected by grid search at every step; pass
    ``reselect=False`` to keep the first step's order for the whole run.

    Raises:
        WalkForwardAborted: a step had no fittable candidate; carries the
            records produced so far.
    """
    train = _as_float_array(train)
    test = _as_float_array(test)
    _check_policy(train, policy)
    dates = _resolve_dates(test_dates, len(test))
    budget = _grid_budget(policy)

    buffer = list(train)
    records: list[ForecastRecord] = []
    fixed: tuple[ArimaOrder, None] | None = None
    for step, actual in enumerate(test):
        history = _history_view(buffer, policy)
        try:
            if reselect or fixed is None:
                order, model = arima.grid_search(history, d, p_max, q_max,
                                                 param_budget=budget)
                fixed = (order, None)
            else:
                order = fixed[0]
                model = arima.fit(history, order)
            predicted = arima.forecast_one(model, history)
        except (FitError, NoModelError, ValueError) as exc:
            raise WalkForwardAborted(
                f"walk-forward step {step} failed: {exc}", records) from exc
        records.append(ForecastRecord(dates[step], float(actual), predicted,
                                      chosen_order=order, aic=model.aic))
        buffer.append(float(actual))
    return records


def walkforward_arima_garch(train, test, policy: WindowPolicy, d: int,
                            p_max: int, q_max: int, *, test_dates=None,
                            reselect: bool = True,
                            freeze_garch=None) -> list[ForecastRecord]:
    """Hybrid walk-forward: grid-selected order, joint ARIMA-GARCH fit,
    point and variance forecast per step.

    ``freeze_garch`` pins the variance parameters (debug mode; with
    gamma = beta ~ 0 the run reduces to plain ARIMA).
    """
    train = _as_float_array(train)
    test = _as_float_array(test)
    _check_policy(train, policy)
    dates = _resolve_dates(test_dates, len(test))
    budget = _grid_budget(policy)

    buffer = list(train)
    records: list[ForecastRecord] = []
    fixed: ArimaOrder | None = None
    for step, actual in enumerate(test):
        history = _history_view(buffer, policy)
        try:
            if reselect or fixed is None:
                fixed, _ = arima.grid_search(history, d, p_max, q_max,
                                             param_budget=budget)
            model = garch.fit_arima_garch(history, fixed,
                                          freeze_garch=freeze_garch)
            predicted, variance = garch.forecast_one_hybrid(model, history)
        except (FitError, NoModelError, ValueError) as exc:
            raise WalkForwardAborted(
                f"hybrid walk-forward step {step} failed: {exc}", records) from exc
        records.append(ForecastRecord(dates[step], float(actual), predicted,
                                      chosen_order=fixed, aic=model.aic,
                                      variance_forecast=variance,
                                      fallback=model.two_stage_fallback))
        buffer.append(float(actual))
    return records


def _resolve_dates(test_dates, n: int):
    if test_dates is None:
        return list(range(n))
    dates = list(test_dates)
    if len(dates) != n:
        raise ValueError("test_dates must align with the test values")
    return dates


def evaluate(model_name: str, records: list[ForecastRecord]) -> EvalReport:
    """Metrics over a finished walk-forward run."""
    y = [r.actual for r in records]
    yhat = [r.predicted for r in records]
    return EvalReport(model_name, mae(y, yhat), rmse(y, yhat),
                      r_square(y, yhat), len(records))


def compare(reports: list[EvalReport]) -> str:
    """Side-by-side table, best RMSE first, 4-decimal metrics."""
    if not reports:
        raise ValueError("need at least one report")
    rows = sorted(reports, key=lambda r: r.rmse)
    name_w = max(len("Model"), max(len(r.model_name) for r in rows))
    header = f"{'Model':<{name_w}}  {'MAE':>10}  {'RMSE':>10}  {'R2':>8}"
    lines = [header, "-" * len(header)]
    for r in rows:
        lines.append(f"{r.model_name:<{name_w}}  {r.mae:>10.4f}  "
                     f"{r.rmse:>10.4f}  {r.r_square:>8.4f}")
    return "\n".join(lines)
