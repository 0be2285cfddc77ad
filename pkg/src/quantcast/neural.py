"""From-scratch MLP and LSTM next-day forecasters.

Both nets regress the next normalized price on a look-back window of
normalized prices. Forward passes, reverse-mode gradients (full
backpropagation through time for the LSTM) and the Adam optimizer are
implemented directly on numpy arrays; no autodiff framework.

The LSTM cell uses sigmoid gates and ELU in place of tanh for both the
candidate cell state and the hidden output. Everything is float64 and
driven by a single seeded generator, so a fixed seed reproduces the
training trajectory bitwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, asdict

import numpy as np
from scipy.special import expit as _sigmoid

from .series import MinMaxNormalizer, fit_normalizer, make_windows

__all__ = [
    "MlpConfig",
    "LstmConfig",
    "LstmState",
    "TrainedNet",
    "init_weights",
    "lstm_step",
    "forward",
    "loss_and_gradients",
    "adam_step",
    "train",
    "predict_test",
]

ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8


@dataclass(frozen=True)
class MlpConfig:
    hidden_layers: int = 3
    hidden_units: int = 83
    activation: str = "relu"
    look_back: int = 3
    epochs: int = 82
    batch_size: int = 9
    learning_rate: float = 0.001
    seed: int = 0

    def __post_init__(self):
        _require_positive(self, "hidden_layers", "hidden_units", "look_back",
                          "epochs", "batch_size", "learning_rate")
        if self.activation != "relu":
            raise ValueError("only relu hidden activation is supported")


@dataclass(frozen=True)
class LstmConfig:
    hidden_units: int = 297
    cell_activation: str = "elu"
    gate_activation: str = "sigmoid"
    look_back: int = 8
    epochs: int = 500
    batch_size: int = 64
    learning_rate: float = 0.0044589
    seed: int = 0

    def __post_init__(self):
        _require_positive(self, "hidden_units", "look_back", "epochs",
                          "batch_size", "learning_rate")
        if self.cell_activation != "elu" or self.gate_activation != "sigmoid":
            raise ValueError("cell activation must be elu and gates sigmoid")


def _require_positive(cfg, *names):
    for name in names:
        if not (getattr(cfg, name) > 0):
            raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class LstmState:
    """Cell and hidden state carried across time steps."""

    cell: np.ndarray
    hidden: np.ndarray

    def __post_init__(self):
        cell = np.asarray(self.cell, dtype=np.float64)
        hidden = np.asarray(self.hidden, dtype=np.float64)
        if cell.shape != hidden.shape:
            raise ValueError("cell and hidden must share a shape")
        if not (np.all(np.isfinite(cell)) and np.all(np.isfinite(hidden))):
            raise ValueError("state entries must be finite")
        object.__setattr__(self, "cell", cell)
        object.__setattr__(self, "hidden", hidden)


@dataclass
class TrainedNet:
    """A network plus everything needed to reproduce and apply it."""

    kind: str  # "MLP" | "LSTM"
    config: MlpConfig | LstmConfig
    weights: dict[str, np.ndarray]
    normalizer: MinMaxNormalizer | None = None
    training_history: dict = field(default_factory=dict)

    def to_json(self) -> str:
        doc = {
            "kind": self.kind,
            "config": asdict(self.config),
            "normalizer": None if self.normalizer is None else
                {"fitted_min": self.normalizer.fitted_min,
                 "fitted_max": self.normalizer.fitted_max},
            "weights": {name: {"shape": list(w.shape), "data": w.ravel().tolist()}
                        for name, w in self.weights.items()},
            "training_history": self.training_history,
        }
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text: str) -> "TrainedNet":
        doc = json.loads(text)
        cfg_cls = MlpConfig if doc["kind"] == "MLP" else LstmConfig
        norm = doc["normalizer"]
        return cls(
            kind=doc["kind"],
            config=cfg_cls(**doc["config"]),
            weights={name: np.array(spec["data"], dtype=np.float64).reshape(spec["shape"])
                     for name, spec in doc["weights"].items()},
            normalizer=None if norm is None else MinMaxNormalizer(**norm),
            training_history=doc["training_history"],
        )


def _glorot(rng: np.random.Generator, shape: tuple[int, int]) -> np.ndarray:
    fan_out, fan_in = shape
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape)


def init_weights(config, seed: int | None = None,
                 rng: np.random.Generator | None = None) -> TrainedNet:
    """Untrained net with Glorot-uniform weights and zero biases.

    Weight tensors are drawn in a fixed order so a given seed always
    produces the same net.
    """
    if not isinstance(config, (MlpConfig, LstmConfig)):
        raise TypeError(f"unsupported config type {type(config).__name__}")
    if rng is None:
        rng = np.random.default_rng(config.seed if seed is None else seed)
    weights: dict[str, np.ndarray] = {}
    if isinstance(config, MlpConfig):
        kind = "MLP"
        fan_in = config.look_back
        for layer in range(1, config.hidden_layers + 1):
            weights[f"W{layer}"] = _glorot(rng, (config.hidden_units, fan_in))
            weights[f"b{layer}"] = np.zeros(config.hidden_units)
            fan_in = config.hidden_units
        weights["W_out"] = _glorot(rng, (1, fan_in))
        weights["b_out"] = np.zeros(1)
    else:
        kind = "LSTM"
        h = config.hidden_units
        for gate in ("f", "i", "C", "o"):
            weights[f"W_{gate}"] = _glorot(rng, (h, h + 1))
            weights[f"b_{gate}"] = np.zeros(h)
        weights["W_out"] = _glorot(rng, (1, h))
        weights["b_out"] = np.zeros(1)
    return TrainedNet(kind, config, weights)


def _elu(x: np.ndarray) -> np.ndarray:
    return np.where(x > 0.0, x, np.expm1(np.minimum(x, 0.0)))


def _elu_grad_from_output(a: np.ndarray) -> np.ndarray:
    # elu(x) = e^x - 1 for x <= 0, so elu'(x) = e^x = a + 1 there
    return np.where(a > 0.0, 1.0, a + 1.0)


def lstm_step(state: LstmState, x: float, weights: dict[str, np.ndarray]) -> LstmState:
    """One LSTM cell update for a scalar input.

    f = sig(W_f [h, x] + b_f), i = sig(W_i [h, x] + b_i),
    Ctil = elu(W_C [h, x] + b_C), C = f*C_prev + i*Ctil,
    o = sig(W_o [h, x] + b_o), h = o * elu(C).
    """
    z = np.concatenate([state.hidden, [float(x)]])
    f = _sigmoid(weights["W_f"] @ z + weights["b_f"])
    i = _sigmoid(weights["W_i"] @ z + weights["b_i"])
    ctil = _elu(weights["W_C"] @ z + weights["b_C"])
    o = _sigmoid(weights["W_o"] @ z + weights["b_o"])
    cell = f * state.cell + i * ctil
    hidden = o * _elu(cell)
    return LstmState(cell, hidden)


def _pack_lstm(weights) -> tuple[np.ndarray, np.ndarray]:
    # one (h+1, 4h) matrix so each time step is a single matmul
    wp = np.concatenate([weights[f"W_{g}"].T for g in ("f", "i", "C", "o")], axis=1)
    bp = np.concatenate([weights[f"b_{g}"] for g in ("f", "i", "C", "o")])
    return wp, bp


def _lstm_forward_batch(weights, windows: np.ndarray, keep_trace: bool = False):
    n, steps = windows.shape
    h = weights["b_f"].shape[0]
    wp, bp = _pack_lstm(weights)
    hidden = np.zeros((n, h))
    cell = np.zeros((n, h))
    trace = []
    for t in range(steps):
        z = np.concatenate([hidden, windows[:, t:t + 1]], axis=1)
        gates = z @ wp + bp
        f = _sigmoid(gates[:, :h])
        i = _sigmoid(gates[:, h:2 * h])
        ctil = _elu(gates[:, 2 * h:3 * h])
        o = _sigmoid(gates[:, 3 * h:])
        cell_prev = cell
        cell = f * cell_prev + i * ctil
        act_c = _elu(cell)
        if keep_trace:
            trace.append((z, f, i, ctil, o, cell_prev, act_c))
        hidden = o * act_c
    pred = hidden @ weights["W_out"][0] + weights["b_out"][0]
    return pred, hidden, trace, wp


def _mlp_forward_batch(weights, windows: np.ndarray, n_hidden: int,
                       keep_trace: bool = False):
    a = windows
    trace = []
    for layer in range(1, n_hidden + 1):
        z = a @ weights[f"W{layer}"].T + weights[f"b{layer}"]
        a_next = np.maximum(z, 0.0)
        if keep_trace:
            trace.append((a, a_next))
        a = a_next
    pred = a @ weights["W_out"][0] + weights["b_out"][0]
    return pred, a, trace


def forward(net: TrainedNet, window) -> float:
    """Prediction in normalized space for one look-back window."""
    w = np.asarray(window, dtype=np.float64)
    if w.shape != (net.config.look_back,):
        raise ValueError(f"window must have length {net.config.look_back}, got shape {w.shape}")
    return float(_forward_many(net, w[None, :])[0])


def _forward_many(net: TrainedNet, windows: np.ndarray) -> np.ndarray:
    if net.kind == "MLP":
        pred, _, _ = _mlp_forward_batch(net.weights, windows, net.config.hidden_layers)
    else:
        pred, _, _, _ = _lstm_forward_batch(net.weights, windows)
    return pred


def loss_and_gradients(net: TrainedNet, windows, targets):
    """Batch MSE in normalized space and its gradient for every weight."""
    x = np.asarray(windows, dtype=np.float64)
    y = np.asarray(targets, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != net.config.look_back:
        raise ValueError("windows must have shape (batch, look_back)")
    if len(x) == 0 or len(x) != len(y):
        raise ValueError("batch must be non-empty with aligned targets")
    n = len(x)
    grads = {}

    if net.kind == "MLP":
        pred, a_last, trace = _mlp_forward_batch(
            net.weights, x, net.config.hidden_layers, keep_trace=True)
        resid = pred - y
        loss = float(np.mean(resid ** 2))
        dpred = 2.0 * resid / n
        grads["W_out"] = (dpred @ a_last)[None, :]
        grads["b_out"] = np.array([dpred.sum()])
        da = np.outer(dpred, net.weights["W_out"][0])
        for layer in range(net.config.hidden_layers, 0, -1):
            a_in, a_out = trace[layer - 1]
            dz = da * (a_out > 0.0)
            grads[f"W{layer}"] = dz.T @ a_in
            grads[f"b{layer}"] = dz.sum(axis=0)
            da = dz @ net.weights[f"W{layer}"]
        return loss, grads

    h = net.config.hidden_units
    pred, _, trace, wp = _lstm_forward_batch(net.weights, x, keep_trace=True)
    resid = pred - y
    loss = float(np.mean(resid ** 2))
    dpred = 2.0 * resid / n

    z_T, f_T, i_T, ctil_T, o_T, cprev_T, actc_T = trace[-1]
    h_last = o_T * actc_T
    grads["W_out"] = (dpred @ h_last)[None, :]
    grads["b_out"] = np.array([dpred.sum()])

    dwp = np.zeros_like(wp)
    dbp = np.zeros(4 * h)
    dh = np.outer(dpred, net.weights["W_out"][0])
    dc = np.zeros((n, h))
    for t in range(len(trace) - 1, -1, -1):
        z, f, i, ctil, o, cell_prev, act_c = trace[t]
        dc = dc + dh * o * _elu_grad_from_output(act_c)
        d_go = dh * act_c * o * (1.0 - o)
        d_gf = dc * cell_prev * f * (1.0 - f)
        d_gi = dc * ctil * i * (1.0 - i)
        d_gc = dc * i * _elu_grad_from_output(ctil)
        dg = np.concatenate([d_gf, d_gi, d_gc, d_go], axis=1)
        dwp += z.T @ dg
        dbp += dg.sum(axis=0)
        dz = dg @ wp.T
        dh = dz[:, :h]
        dc = dc * f
    for k, gate in enumerate(("f", "i", "C", "o")):
        grads[f"W_{gate}"] = dwp[:, k * h:(k + 1) * h].T
        grads[f"b_{gate}"] = dbp[k * h:(k + 1) * h]
    return loss, grads


def adam_step(weights: dict[str, np.ndarray], gradients: dict[str, np.ndarray],
              moments: dict[str, tuple[np.ndarray, np.ndarray]], t: int,
              lr: float):
    """One Adam update (beta1=0.9, beta2=0.999, eps=1e-8, bias-corrected).

    Updates `weights` and `moments` in place and returns them; `t` is the
    1-based step index.
    """
    if t < 1:
        raise ValueError("step index t must be >= 1")
    c1 = 1.0 - ADAM_BETA1 ** t
    c2 = 1.0 - ADAM_BETA2 ** t
    for name, g in gradients.items():
        m, v = moments[name]
        m *= ADAM_BETA1
        m += (1.0 - ADAM_BETA1) * g
        v *= ADAM_BETA2
        v += (1.0 - ADAM_BETA2) * g * g
        weights[name] -= lr * (m / c1) / (np.sqrt(v / c2) + ADAM_EPS)
    return weights, moments


def train(config, train_values, validation_values=None) -> TrainedNet:
    """Train a forecaster on raw prices with the configured protocol.

    The normalizer is fitted on `train_values` only; windows are built in
    normalized space, shuffled each epoch by a seeded generator, and
    trained with mini-batch Adam for exactly `config.epochs` epochs (no
    early stopping; the trailing partial batch is used). The recorded
    train loss is the window-weighted mean of the batch losses seen
    during the epoch; validation loss is evaluated after each epoch.
    """
    rng = np.random.default_rng(config.seed)
    net = init_weights(config, rng=rng)
    normalizer = fit_normalizer(train_values)
    net.normalizer = normalizer

    scaled = normalizer.transform(train_values)
    windows = make_windows(scaled, config.look_back)
    x, y = windows.inputs, windows.targets
    n = len(y)

    val_xy = None
    if validation_values is not None and len(validation_values) > config.look_back:
        vw = make_windows(normalizer.transform(validation_values), config.look_back)
        val_xy = (vw.inputs, vw.targets)

    moments = {name: (np.zeros_like(w), np.zeros_like(w))
               for name, w in net.weights.items()}
    train_curve, val_curve = [], []
    step = 0
    for _ in range(config.epochs):
        order = rng.permutation(n)
        epoch_sse = 0.0
        for start in range(0, n, config.batch_size):
            batch = order[start:start + config.batch_size]
            loss, grads = loss_and_gradients(net, x[batch], y[batch])
            step += 1
            adam_step(net.weights, grads, moments, step, config.learning_rate)
            epoch_sse += loss * len(batch)
        train_curve.append(epoch_sse / n)
        if val_xy is not None:
            vp = _forward_many(net, val_xy[0])
            val_curve.append(float(np.mean((vp - val_xy[1]) ** 2)))
    net.training_history = {"train_loss": train_curve}
    if val_xy is not None:
        net.training_history["validation_loss"] = val_curve
    return net


def predict_test(net: TrainedNet, full_values, test_start_index: int) -> np.ndarray:
    """One-step-ahead price forecasts for indices >= test_start_index.

    Each window holds the actual observed prices immediately before the
    target index, so every forecast uses only information available at
    forecast time.
    """
    values = np.asarray(full_values, dtype=np.float64)
    lb = net.config.look_back
    if test_start_index < lb:
        raise ValueError(f"test_start_index must be >= look_back={lb}")
    if test_start_index >= len(values):
        raise ValueError("test_start_index beyond the end of the series")
    if net.normalizer is None:
        raise ValueError("net has no fitted normalizer")
    scaled = net.normalizer.transform(values)
    idx = np.arange(test_start_index, len(values))
    windows = scaled[idx[:, None] - lb + np.arange(lb)[None, :]]
    preds = _forward_many(net, windows)
    return net.normalizer.inverse_transform(preds)
