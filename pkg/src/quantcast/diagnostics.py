"""Stationarity and correlation diagnostics: ACF, PACF and the ADF unit-root test.

The autocovariance estimator uses divisor n (biased), which keeps the
autocorrelation sequence positive semidefinite. ADF p-values come from
embedded Monte Carlo quantile tables of the Dickey-Fuller null
distribution (see ``_dftables``), interpolated in the statistic and in
1/n for the effective sample size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _dftables
from .series import _as_float_array

__all__ = ["AcfResult", "AdfResult", "acf", "pacf", "adf_test", "REGRESSION_KINDS"]

#: Deterministic terms in the ADF regression: none, constant, constant+trend.
REGRESSION_KINDS = ("n", "c", "ct")


@dataclass(frozen=True)
class AcfResult:
    """(Partial) autocorrelations by lag, with the +-1.96/sqrt(n) band."""

    lags: np.ndarray
    values: np.ndarray
    n: int
    conf_band: float

    def __post_init__(self):
        object.__setattr__(self, "lags", np.asarray(self.lags, dtype=np.int64))
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.float64))


@dataclass(frozen=True)
class AdfResult:
    """Augmented Dickey-Fuller outcome for one regression specification."""

    statistic: float
    p_value: float
    lags_used: int
    regression: str
    n_effective: int


def acf(values, max_lag: int) -> AcfResult:
    """Sample autocorrelation function for lags 0..max_lag.

    values[k] is the lag-k autocovariance (divisor n) over the lag-0
    autocovariance, so values[0] == 1 exactly.
    """
    x = _as_float_array(values)
    n = len(x)
    if max_lag < 1:
        raise ValueError("max_lag must be at least 1")
    if n <= max_lag:
        raise ValueError(f"need more than max_lag={max_lag} observations, got {n}")
    xc = x - x.mean()
    c0 = float(np.dot(xc, xc)) / n
    if c0 <= 0.0:
        raise ValueError("autocorrelation undefined for a constant series")
    vals = np.empty(max_lag + 1)
    vals[0] = 1.0
    for k in range(1, max_lag + 1):
        vals[k] = float(np.dot(xc[:-k], xc[k:])) / n / c0
    return AcfResult(np.arange(max_lag + 1), vals, n, 1.96 / math.sqrt(n))


def pacf(values, max_lag: int) -> AcfResult:
    """Partial autocorrelations via the Durbin-Levinson recursion on the ACF."""
    r = acf(values, max_lag)
    rho = r.values
    out = np.empty(max_lag + 1)
    out[0] = 1.0
    # phi holds the AR(k) coefficient vector at the current recursion level
    phi = np.zeros(max_lag + 1)
    prev = np.zeros(max_lag + 1)
    for k in range(1, max_lag + 1):
        if k == 1:
            phi[1] = rho[1]
        else:
            num = rho[k] - float(np.dot(prev[1:k], rho[k - 1:0:-1]))
            den = 1.0 - float(np.dot(prev[1:k], rho[1:k]))
            if den == 0.0:
                raise ValueError(f"Durbin-Levinson recursion degenerate at lag {k}")
            phi[k] = num / den
            phi[1:k] = prev[1:k] - phi[k] * prev[k - 1:0:-1]
        out[k] = phi[k]
        prev[: k + 1] = phi[: k + 1]
    return AcfResult(np.arange(max_lag + 1), out, r.n, r.conf_band)


def _ols(y: np.ndarray, X: np.ndarray):
    """OLS fit returning (coefficients, residuals, sigma2_hat, XtX_inverse)."""
    coef, _, rank, _ = np.linalg.lstsq(X, y, rcond=None)
    if rank < X.shape[1]:
        raise ValueError("ADF regression design matrix is rank deficient")
    resid = y - X @ coef
    dof = X.shape[0] - X.shape[1]
    if dof <= 0:
        raise ValueError("insufficient data for the ADF regression")
    sigma2 = float(resid @ resid) / dof
    xtx_inv = np.linalg.inv(X.T @ X)
    return coef, resid, sigma2, xtx_inv


def _adf_design(y: np.ndarray, k: int, regression: str):
    """Design matrix for Delta y_t on [y_{t-1}, Delta y_{t-1..k}, deterministics]."""
    dy = np.diff(y)
    rows = len(dy) - k
    target = dy[k:]
    cols = [y[k:-1]]
    for i in range(1, k + 1):
        cols.append(dy[k - i: len(dy) - i])
    if regression in ("c", "ct"):
        cols.append(np.ones(rows))
    if regression == "ct":
        cols.append(np.arange(rows, dtype=np.float64))
    return target, np.column_stack(cols)


def df_pvalue(statistic: float, n_effective: int, regression: str) -> float:
    """p-value from the embedded Dickey-Fuller quantile tables.

    Linear interpolation in 1/n between the bracketing tabulated sample
    sizes, then in the statistic along the quantile grid. Clamped to the
    tabulated probability range [0.001, 0.999].
    """
    sizes = _dftables.SAMPLE_SIZES
    table = _dftables.QUANTILES[regression]
    n = min(max(n_effective, sizes[0]), sizes[-1])
    hi = next(s for s in sizes if s >= n)
    lo = max(s for s in sizes if s <= n)
    if hi == lo:
        q = table[lo]
    else:
        w = (1.0 / n - 1.0 / lo) / (1.0 / hi - 1.0 / lo)
        q = (1.0 - w) * table[lo] + w * table[hi]
    return float(np.interp(statistic, q, _dftables.PROBS))


def adf_test(values, regression: str = "c", max_lag="auto") -> AdfResult:
    """Augmented Dickey-Fuller test for a unit root.

    Fits Delta y_t = deterministics + rho*y_{t-1} + sum c_i Delta y_{t-i} + e_t
    and reports the t-ratio of rho. With ``max_lag="auto"`` the lag count
    is chosen by minimizing AIC over 0..floor(12*(n/100)^(1/4)) on a
    common sample (the Schwert bound), then the chosen regression is
    re-fit on all usable rows.

    Args:
        values: the series to test (length >= 20).
        regression: "c" constant only (default), "ct" constant+trend, "n" none.
        max_lag: "auto" for AIC selection, or a fixed non-negative lag count.

    Returns:
        AdfResult with the statistic, interpolated p-value, lags used and
        the effective regression sample size.
    """
    y = _as_float_array(values)
    n = len(y)
    if regression not in REGRESSION_KINDS:
        raise ValueError(f"regression must be one of {REGRESSION_KINDS}")
    if n < 20:
        raise ValueError(f"ADF test needs at least 20 observations, got {n}")

    n_det = {"n": 0, "c": 1, "ct": 2}[regression]
    schwert = int(math.floor(12.0 * (n / 100.0) ** 0.25))

    if max_lag == "auto":
        bound = schwert
        # keep enough rows to fit the largest candidate
        while bound > 0 and (n - 1 - bound) <= bound + n_det + 2:
            bound -= 1
        best_k, best_aic = 0, math.inf
        # common estimation sample across candidates so AICs are comparable
        target_full, X_full = _adf_design(y, bound, regression)
        rows = len(target_full)
        for k in range(0, bound + 1):
            keep = [0] + list(range(1, k + 1))
            keep += list(range(bound + 1, bound + 1 + n_det))
            Xk = X_full[:, keep]
            _, resid, _, _ = _ols(target_full, Xk)
            ssr = float(resid @ resid)
            aic_k = rows * math.log(ssr / rows) + 2.0 * Xk.shape[1]
            if aic_k < best_aic:
                best_k, best_aic = k, aic_k
        k = best_k
    else:
        k = int(max_lag)
        if k < 0:
            raise ValueError("max_lag must be non-negative")
        if n - 1 - k <= k + n_det + 2:
            raise ValueError("insufficient data after lagging")

    target, X = _adf_design(y, k, regression)
    coef, _, sigma2, xtx_inv = _ols(target, X)
    stat = float(coef[0] / math.sqrt(sigma2 * xtx_inv[0, 0]))
    n_eff = len(target)
    return AdfResult(stat, df_pvalue(stat, n_eff, regression), k, regression, n_eff)
