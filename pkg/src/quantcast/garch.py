"""GARCH(1,1) quasi-MLE and the joint ARIMA-GARCH model.

The conditional-variance recursion is

    sigma_t^2 = omega + gamma * eps_{t-1}^2 + beta * sigma_{t-1}^2

initialized at the sample variance of the residuals. The joint model
re-estimates the ARIMA mean parameters under the heteroskedastic
Gaussian likelihood (residuals from the CSS recursion, variances from
the GARCH recursion on those residuals), started from the two-stage
solution. That reweighting is what lets the hybrid's point forecasts
depart from the plain ARIMA fit when volatility clusters.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize
from scipy.signal import lfilter
from scipy.special import expit, logit

from . import arima
from .arima import ArimaOrder, css_residuals, _unpack, _profile_loglik
from .errors import FitError
from .series import _as_float_array

__all__ = [
    "GarchParams",
    "GarchFit",
    "ArimaGarchModel",
    "fit_garch11",
    "forecast_variance",
    "fit_arima_garch",
    "forecast_one_hybrid",
]

logger = logging.getLogger(__name__)

MAX_ITER = 5000
F_TOL = 1e-8
_PENALTY = 1e12
MIN_RESIDUALS = 30


@dataclass(frozen=True)
class GarchParams:
    """GARCH(1,1) coefficients; covariance-stationary by construction."""

    omega: float
    gamma: float
    beta: float

    def __post_init__(self):
        if not (self.omega > 0.0):
            raise ValueError("omega must be positive")
        if self.gamma < 0.0 or self.beta < 0.0:
            raise ValueError("gamma and beta must be non-negative")
        if not (self.gamma + self.beta < 1.0):
            raise ValueError("gamma + beta must be below 1")

    @property
    def unconditional_variance(self) -> float:
        return self.omega / (1.0 - self.gamma - self.beta)


@dataclass(frozen=True)
class GarchFit:
    params: GarchParams
    cond_variances: np.ndarray
    log_likelihood: float
    unconditional_variance: float

    def __post_init__(self):
        object.__setattr__(
            self, "cond_variances", np.asarray(self.cond_variances, dtype=np.float64)
        )


@dataclass(frozen=True)
class ArimaGarchModel:
    """Jointly estimated mean equation plus GARCH(1,1) variance equation."""

    order: ArimaOrder
    phi: np.ndarray
    theta: np.ndarray
    alpha: float
    garch: GarchParams
    log_likelihood: float
    aic: float
    two_stage_fallback: bool = field(default=False)

    def __post_init__(self):
        object.__setattr__(self, "phi", np.asarray(self.phi, dtype=np.float64))
        object.__setattr__(self, "theta", np.asarray(self.theta, dtype=np.float64))


def garch_recursion(residuals: np.ndarray, params: GarchParams,
                    initial_variance: float | None = None) -> np.ndarray:
    """Conditional variance path sigma_t^2 along the residual series."""
    eps = np.asarray(residuals, dtype=np.float64)
    v0 = float(np.var(eps)) if initial_variance is None else float(initial_variance)
    if not v0 > 0.0:
        raise ValueError("initial variance must be positive")
    drive = params.omega + params.gamma * eps[:-1] ** 2
    if len(drive) == 0:
        return np.array([v0])
    tail, _ = lfilter([1.0], [1.0, -params.beta], drive, zi=np.array([params.beta * v0]))
    return np.concatenate([[v0], tail])


def garch_loglik(residuals: np.ndarray, variances: np.ndarray) -> float:
    """Gaussian log-likelihood -0.5 * sum(ln 2pi + ln sigma_t^2 + eps_t^2/sigma_t^2)."""
    eps = np.asarray(residuals, dtype=np.float64)
    var = np.asarray(variances, dtype=np.float64)
    return float(-0.5 * np.sum(np.log(2.0 * math.pi) + np.log(var) + eps * eps / var))


def _garch_unpack(u: np.ndarray) -> GarchParams:
    # omega = exp(u0); persistence s = gamma+beta and split f = gamma/s via logits
    s = expit(u[1])
    f = expit(u[2])
    return GarchParams(math.exp(u[0]), s * f, s * (1.0 - f))


def _garch_pack(params: GarchParams) -> np.ndarray:
    s = params.gamma + params.beta
    s = min(max(s, 1e-8), 1.0 - 1e-8)
    f = params.gamma / s if s > 0 else 0.5
    f = min(max(f, 1e-8), 1.0 - 1e-8)
    return np.array([math.log(params.omega), logit(s), logit(f)])


def fit_garch11(residuals) -> GarchFit:
    """Quasi-MLE of GARCH(1,1) on a residual series.

    Constraints (omega > 0, gamma, beta >= 0, gamma + beta < 1) are
    enforced by the log/logit reparameterization; the simplex optimizer
    runs from two fixed starts.
    """
    eps = _as_float_array(residuals)
    n = len(eps)
    if n < MIN_RESIDUALS:
        raise ValueError(f"need at least {MIN_RESIDUALS} residuals, got {n}")
    v = float(np.var(eps))
    if not v > 0.0:
        raise ValueError("residuals are degenerate (zero variance)")

    def objective(u):
        try:
            params = _garch_unpack(u)
        except (ValueError, OverflowError):
            return _PENALTY
        var = garch_recursion(eps, params, initial_variance=v)
        ll = garch_loglik(eps, var)
        return -ll if math.isfinite(ll) else _PENALTY

    starts = [
        _garch_pack(GarchParams(v * 0.05, 0.095, 0.855)),
        _garch_pack(GarchParams(v * 0.40, 0.150, 0.450)),
    ]
    best, any_ok = None, False
    for u0 in starts:
        res = minimize(objective, u0, method="Nelder-Mead",
                       options={"maxiter": MAX_ITER, "maxfev": 4 * MAX_ITER,
                                "fatol": F_TOL, "xatol": 1e-7})
        any_ok = any_ok or bool(res.success)
        if res.success and (best is None or res.fun < best.fun):
            best = res
    if not any_ok or best is None:
        raise FitError("GARCH(1,1) optimization did not converge from any start")

    params = _garch_unpack(best.x)
    var = garch_recursion(eps, params, initial_variance=v)
    return GarchFit(params, var, garch_loglik(eps, var), params.unconditional_variance)


def forecast_variance(fit: GarchFit, last_residual: float) -> float:
    """One-step variance forecast omega + gamma*eps_T^2 + beta*sigma_T^2."""
    p = fit.params
    return float(p.omega + p.gamma * last_residual ** 2 + p.beta * fit.cond_variances[-1])


def _joint_loglik(w: np.ndarray, alpha: float, phi: np.ndarray, theta: np.ndarray,
                  garch: GarchParams) -> float:
    resid = css_residuals(w, alpha, phi, theta)
    v = float(np.var(resid))
    if not (v > 0.0 and math.isfinite(v)):
        return -math.inf
    var = garch_recursion(resid, garch, initial_variance=v)
    return garch_loglik(resid, var)


def fit_arima_garch(values, order: ArimaOrder,
                    freeze_garch: GarchParams | None = None) -> ArimaGarchModel:
    """Joint quasi-MLE of the ARIMA mean equation under GARCH(1,1) errors.

    Two-stage estimation (CSS ARIMA, then GARCH on its residuals) supplies
    the start point; the joint heteroskedastic likelihood is then refined
    over all parameters at once. If refinement cannot improve on the
    start, the two-stage solution is returned with a fallback flag.

    With ``freeze_garch`` the variance parameters are pinned and only the
    mean equation is optimized (debug/reduction mode).
    """
    x = _as_float_array(values)
    p, d, q = order
    w = np.diff(x, n=d) if d else x
    if len(w) < MIN_RESIDUALS:
        raise ValueError(f"need at least {MIN_RESIDUALS} differenced observations")

    mean_model = arima.fit(x, order)
    n_mean = 1 + p + q

    u_mean0 = np.empty(n_mean)
    u_mean0[0] = mean_model.alpha
    # clamp=True: a boundary-grazing mean fit must still yield a start point
    u_mean0[1: 1 + p] = np.arctanh(np.clip(
        arima.coef_to_pacf(mean_model.phi, clamp=True), -1 + 1e-12, 1 - 1e-12)) if p else ()
    u_mean0[1 + p:] = np.arctanh(np.clip(
        arima.coef_to_pacf(-mean_model.theta, clamp=True), -1 + 1e-12, 1 - 1e-12)) if q else ()

    if freeze_garch is not None:
        garch0 = freeze_garch

        def objective(u):
            alpha, phi, theta = _unpack(u, p, q)
            ll = _joint_loglik(w, alpha, phi, theta, garch0)
            return -ll if math.isfinite(ll) else _PENALTY

        u0 = u_mean0
    else:
        stage2 = fit_garch11(mean_model.residuals)
        garch0 = stage2.params

        def objective(u):
            alpha, phi, theta = _unpack(u[:n_mean], p, q)
            try:
                garch = _garch_unpack(u[n_mean:])
            except (ValueError, OverflowError):
                return _PENALTY
            ll = _joint_loglik(w, alpha, phi, theta, garch)
            return -ll if math.isfinite(ll) else _PENALTY

        u0 = np.concatenate([u_mean0, _garch_pack(garch0)])

    f0 = objective(u0)
    res = minimize(objective, u0, method="Nelder-Mead",
                   options={"maxiter": MAX_ITER, "maxfev": 4 * MAX_ITER,
                            "fatol": F_TOL, "xatol": 1e-7})

    fallback = bool(not math.isfinite(res.fun) or res.fun > f0 + 1e-12)
    if fallback:
        logger.warning("joint ARIMA-GARCH refinement failed for order %s; "
                       "keeping the two-stage solution", tuple(order))
        u_best = u0
    else:
        u_best = res.x

    alpha, phi, theta = _unpack(u_best[:n_mean], p, q)
    garch = garch0 if freeze_garch is not None else (
        garch0 if fallback else _garch_unpack(u_best[n_mean:]))
    ll = _joint_loglik(w, alpha, phi, theta, garch)
    k = p + q + 4  # intercept + AR + MA + (omega, gamma, beta)
    return ArimaGarchModel(order, phi, theta, alpha, garch, ll,
                           2.0 * k - 2.0 * ll, two_stage_fallback=fallback)


def forecast_one_hybrid(model: ArimaGarchModel, history) -> tuple[float, float]:
    """One-step point forecast from the mean equation plus a variance forecast."""
    x = _as_float_array(history)
    p, d, q = model.order
    mean_view = arima.ArimaModel(
        model.order, model.phi, model.theta, model.alpha,
        sigma2=1.0, log_likelihood=0.0, aic=0.0, residuals=np.zeros(0))
    point = arima.forecast_one(mean_view, x)

    w = np.diff(x, n=d) if d else x
    resid = css_residuals(w, model.alpha, model.phi, model.theta)
    var_path = garch_recursion(resid, model.garch)
    g = model.garch
    variance = float(g.omega + g.gamma * resid[-1] ** 2 + g.beta * var_path[-1])
    return point, variance
