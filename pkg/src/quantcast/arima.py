"""ARIMA(p,d,q) estimation by conditional-sum-of-squares Gaussian quasi-likelihood.

The mean equation, in lag-operator form with differencing operator
(1-B)^d and MA polynomial 1 + theta_1 B + ... + theta_q B^q, is fitted on
the d-times differenced series w_t:

    w_t = alpha + sum_i phi_i w_{t-i} + eps_t + sum_j theta_j eps_{t-j}

Residuals are recursed over the full differenced sample with pre-sample
w set to its mean and pre-sample residuals set to zero. Stationarity and
invertibility are enforced through the partial-autocorrelation transform
so the optimizer (Nelder-Mead simplex) runs unconstrained, from two fixed
starts: all-zero coefficients and a Hannan-Rissanen regression start.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize
from scipy.signal import lfilter

from .errors import FitError, NoModelError
from .series import _as_float_array

__all__ = ["ArimaOrder", "ArimaModel", "fit", "aic", "forecast_one", "grid_search"]

logger = logging.getLogger(__name__)

MAX_ITER = 2000
F_TOL = 1e-8
BOUNDARY_MODULUS = 1.001
PACF_CLIP = 1.0 - 1e-12
_PENALTY = 1e12


@dataclass(frozen=True)
class ArimaOrder:
    """(p, d, q): AR lags, differencing order, MA lags."""

    p: int
    d: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.d < 0 or self.q < 0:
            raise ValueError("orders must be non-negative")
        if self.d > 2:
            raise ValueError("differencing order above 2 is not supported")

    def __iter__(self):
        return iter((self.p, self.d, self.q))


@dataclass(frozen=True)
class ArimaModel:
    """A fitted ARIMA model: coefficients, fit quality and in-sample residuals."""

    order: ArimaOrder
    phi: np.ndarray
    theta: np.ndarray
    alpha: float
    sigma2: float
    log_likelihood: float
    aic: float
    residuals: np.ndarray
    near_boundary: bool = field(default=False)

    def __post_init__(self):
        object.__setattr__(self, "phi", np.asarray(self.phi, dtype=np.float64))
        object.__setattr__(self, "theta", np.asarray(self.theta, dtype=np.float64))

    @property
    def mean(self) -> float:
        """Implied mean of the differenced series, alpha / (1 - sum phi)."""
        s = float(np.sum(self.phi))
        if abs(1.0 - s) < 1e-12:
            return math.nan
        return self.alpha / (1.0 - s)

    @property
    def k_params(self) -> int:
        # intercept and innovation variance count toward the AIC penalty
        return self.order.p + self.order.q + 2


def pacf_to_coef(r: np.ndarray) -> np.ndarray:
    """Levinson-Durbin step-up: partial autocorrelations -> AR coefficients."""
    coef = np.zeros(0)
    for k, rk in enumerate(r, start=1):
        new = np.empty(k)
        if k > 1:
            new[: k - 1] = coef - rk * coef[::-1]
        new[k - 1] = rk
        coef = new
    return coef


def coef_to_pacf(coef: np.ndarray, clamp: bool = False) -> np.ndarray:
    """Inverse step-up. Raises ValueError if `coef` is not stationary.

    With ``clamp=True`` a partial that lands on or outside the boundary is
    pinned just inside (-1, 1) instead; the step-down near the boundary is
    ill-conditioned, so a stationary input can graze 1 in floating point.
    Use the clamped form only to build optimizer start points.
    """
    work = np.asarray(coef, dtype=np.float64).copy()
    out = np.empty(len(work))
    for k in range(len(work), 0, -1):
        rk = work[k - 1]
        if not abs(rk) < 1.0:  # catches NaN as well
            if not clamp:
                raise ValueError("coefficients outside the stationary region")
            rk = math.copysign(PACF_CLIP, rk) if math.isfinite(rk) else 0.0
        out[k - 1] = rk
        if k > 1:
            head = work[: k - 1]
            work = (head + rk * head[::-1]) / (1.0 - rk * rk)
    return out


def _unpack(u: np.ndarray, p: int, q: int):
    alpha = u[0]
    # tanh saturates to exactly +-1 beyond |u| ~ 19, which would place a
    # root on the unit circle; keep partials strictly inside the open interval
    phi = pacf_to_coef(np.clip(np.tanh(u[1: 1 + p]), -PACF_CLIP, PACF_CLIP)) if p else np.zeros(0)
    # theta = -c maps the stationary region for c onto the invertible
    # region for the 1 + theta_1 B + ... polynomial
    theta = -pacf_to_coef(np.clip(np.tanh(u[1 + p:]), -PACF_CLIP, PACF_CLIP)) if q else np.zeros(0)
    return alpha, phi, theta


def css_residuals(w: np.ndarray, alpha: float, phi: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """Residual recursion over the differenced series.

    eps_t = w_t - alpha - sum_i phi_i w_{t-i} - sum_j theta_j eps_{t-j},
    with w_{t} = mean(w) for t < 0 and eps_{t} = 0 for t < 0.
    """
    w = np.asarray(w, dtype=np.float64)
    n = len(w)
    p, q = len(phi), len(theta)
    z = w - alpha
    if p:
        w_ext = np.concatenate([np.full(p, w.mean()), w])
        for i in range(1, p + 1):
            z = z - phi[i - 1] * w_ext[p - i: p - i + n]
    if q:
        return lfilter([1.0], np.concatenate([[1.0], theta]), z)
    return z


def _profile_loglik(w: np.ndarray, alpha: float, phi: np.ndarray, theta: np.ndarray):
    resid = css_residuals(w, alpha, phi, theta)
    n = len(w)
    ssr = float(resid @ resid)
    if not math.isfinite(ssr) or ssr <= 0.0:
        return -math.inf, math.nan, resid
    sigma2 = ssr / n
    ll = -0.5 * n * (math.log(2.0 * math.pi * sigma2) + 1.0)
    return ll, sigma2, resid


def gaussian_loglik(residuals: np.ndarray, sigma2: float) -> float:
    """Gaussian log-likelihood of residuals at a given innovation variance."""
    resid = np.asarray(residuals, dtype=np.float64)
    n = len(resid)
    return -0.5 * (n * math.log(2.0 * math.pi * sigma2) + float(resid @ resid) / sigma2)


def _hannan_rissanen_start(w: np.ndarray, p: int, q: int) -> np.ndarray | None:
    """Regression-based start: long-AR residuals feed an ARMA regression."""
    n = len(w)
    h = min(max(8, 2 * (p + q)), max(1, (n - 1) // 3))
    if n - h < h + p + q + 4:
        return None
    rows = n - h
    X = np.column_stack([np.ones(rows)] + [w[h - i: n - i] for i in range(1, h + 1)])
    coef, _, _, _ = np.linalg.lstsq(X, w[h:], rcond=None)
    eps = np.zeros(n)
    eps[h:] = w[h:] - X @ coef

    t0 = max(p, h + q)
    if n - t0 < p + q + 3:
        return None
    cols = [np.ones(n - t0)]
    cols += [w[t0 - i: n - i] for i in range(1, p + 1)]
    cols += [eps[t0 - j: n - j] for j in range(1, q + 1)]
    beta, _, _, _ = np.linalg.lstsq(np.column_stack(cols), w[t0:], rcond=None)
    alpha, phi, theta = beta[0], beta[1: 1 + p], beta[1 + p:]

    for _ in range(12):
        try:
            u = np.empty(1 + p + q)
            u[0] = alpha
            u[1: 1 + p] = np.arctanh(coef_to_pacf(phi)) if p else ()
            u[1 + p:] = np.arctanh(coef_to_pacf(-theta)) if q else ()
            return u
        except ValueError:
            phi = phi * 0.8
            theta = theta * 0.8
    return None


def _poly_root_min_modulus(coefs: np.ndarray, kind: str) -> float:
    """Smallest root modulus of 1 - sum c_i z^i (AR) or 1 + sum c_i z^i (MA)."""
    if len(coefs) == 0:
        return math.inf
    sign = -1.0 if kind == "ar" else 1.0
    poly = np.concatenate([(sign * coefs)[::-1], [1.0]])
    # a negligible leading coefficient puts its root out near infinity and
    # ruins the companion-matrix conditioning; drop such terms, their roots
    # cannot be the smallest
    scale = np.max(np.abs(poly))
    while len(poly) > 1 and abs(poly[0]) <= 1e-14 * scale:
        poly = poly[1:]
    if len(poly) <= 1:
        return math.inf
    roots = np.roots(poly)
    if len(roots) == 0:
        return math.inf
    return float(np.min(np.abs(roots)))


def fit(values, order: ArimaOrder) -> ArimaModel:
    """Fit an ARIMA(p,d,q) by conditional sum of squares.

    Deterministic: two fixed optimizer starts (zero coefficients and a
    Hannan-Rissanen regression start); best converged solution wins.

    Raises:
        ValueError: differenced series too short for the order.
        FitError: the optimizer converged from neither start.
    """
    x = _as_float_array(values)
    p, d, q = order
    if len(x) <= d:
        raise ValueError("series too short to difference")
    w = np.diff(x, n=d) if d else x
    n = len(w)
    if n <= p + q + 1:
        raise ValueError(f"differenced length {n} cannot identify ARIMA({p},{d},{q})")

    if p == 0 and q == 0:
        alpha = float(w.mean())
        ll, sigma2, resid = _profile_loglik(w, alpha, np.zeros(0), np.zeros(0))
        return ArimaModel(order, np.zeros(0), np.zeros(0), alpha, sigma2,
                          ll, 2.0 * 2 - 2.0 * ll, resid)

    def objective(u):
        alpha, phi, theta = _unpack(u, p, q)
        ll, _, _ = _profile_loglik(w, alpha, phi, theta)
        return -ll if math.isfinite(ll) else _PENALTY

    starts = [np.concatenate([[w.mean()], np.zeros(p + q)])]
    hr = _hannan_rissanen_start(w, p, q)
    if hr is not None and math.isfinite(objective(hr)) and objective(hr) < _PENALTY:
        starts.append(hr)

    best = None
    any_converged = False
    for u0 in starts:
        res = minimize(objective, u0, method="Nelder-Mead",
                       options={"maxiter": MAX_ITER, "maxfev": 4 * MAX_ITER,
                                "fatol": F_TOL, "xatol": 1e-6})
        any_converged = any_converged or bool(res.success)
        if res.success and (best is None or res.fun < best.fun):
            best = res
    if not any_converged or best is None:
        raise FitError(f"ARIMA({p},{d},{q}) CSS optimization did not converge from any start")

    # polish: a fresh simplex at the incumbent escapes premature shrinkage
    for _ in range(3):
        res = minimize(objective, best.x, method="Nelder-Mead",
                       options={"maxiter": MAX_ITER, "maxfev": 4 * MAX_ITER,
                                "fatol": F_TOL, "xatol": 1e-6})
        if res.success and res.fun < best.fun:
            improved = best.fun - res.fun > F_TOL
            best = res
            if not improved:
                break
        else:
            break

    alpha, phi, theta = _unpack(best.x, p, q)
    ll, sigma2, resid = _profile_loglik(w, alpha, phi, theta)
    near = min(_poly_root_min_modulus(phi, "ar"),
               _poly_root_min_modulus(theta, "ma")) < BOUNDARY_MODULUS
    if near:
        logger.debug("ARIMA(%d,%d,%d) fit is near the unit-root boundary", p, d, q)
    model = ArimaModel(order, phi, theta, alpha, sigma2, ll,
                       2.0 * (p + q + 2) - 2.0 * ll, resid, near_boundary=near)
    return model


def aic(model: ArimaModel) -> float:
    """Akaike information criterion, 2k - 2 log L with k = p + q + 2."""
    return 2.0 * model.k_params - 2.0 * model.log_likelihood


def forecast_one(model: ArimaModel, history) -> float:
    """One-step-ahead price forecast given the observed history.

    Runs the residual recursion over the differenced history, applies the
    mean equation for the next differenced value, then integrates back to
    the price level.
    """
    x = _as_float_array(history)
    p, d, q = model.order
    if len(x) < max(p + d, d + 1):
        raise ValueError(f"history of length {len(x)} is too short for ARIMA({p},{d},{q})")
    w = np.diff(x, n=d) if d else x
    if len(w) < p:
        raise ValueError("history too short for the AR terms")

    next_w = model.alpha
    for i in range(1, p + 1):
        next_w += model.phi[i - 1] * w[-i]
    if q:
        resid = css_residuals(w, model.alpha, model.phi, model.theta)
        for j in range(1, q + 1):
            next_w += model.theta[j - 1] * (resid[-j] if j <= len(resid) else 0.0)

    # integrate d times: step each difference level forward once
    forecast = next_w
    for level in range(d, 0, -1):
        last_at_level = float(np.diff(x, n=level - 1)[-1]) if level - 1 else float(x[-1])
        forecast = last_at_level + forecast
    return float(forecast)


def grid_search(values, d: int, p_max: int, q_max: int,
                param_budget: float | None = None):
    """AIC grid search over (p, q) in [0, p_max] x [0, q_max] at fixed d.

    Candidates whose parameter count p+q+2 reaches ``param_budget`` are
    excluded (used by rolling windows to keep fits identifiable). Failed
    fits are skipped with a warning. Ties break toward smaller p+q, then
    smaller p.

    Returns:
        (ArimaOrder, ArimaModel) of the winning candidate.

    Raises:
        NoModelError: every candidate failed to fit.
    """
    best_key, best = None, None
    for p in range(p_max + 1):
        for q in range(q_max + 1):
            if param_budget is not None and p + q + 2 >= param_budget:
                continue
            order = ArimaOrder(p, d, q)
            try:
                model = fit(values, order)
            except (FitError, ValueError) as exc:
                logger.debug("grid candidate (%d,%d,%d) skipped: %s", p, d, q, exc)
                continue
            key = (model.aic, p + q, p)
            if best_key is None or key < best_key:
                best_key, best = key, (order, model)
    if best is None:
        raise NoModelError(f"no ARIMA candidate converged for d={d}, grid {p_max}x{q_max}")
    return best
