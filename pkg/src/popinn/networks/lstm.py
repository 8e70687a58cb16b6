"""Stacked LSTM surrogate with a dense head.

Each sample (a_norm, t_norm) is a length-1 sequence whose single step is
the two-dimensional input vector; hidden and cell states start at zero.
The scalar forward pass accepts floats or Dual2 inputs.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..autodiff.dual import sigmoid, tanh

__all__ = [
    "LstmLayer",
    "LstmParams",
    "DropoutSpec",
    "lstm_init",
    "lstm_forward",
    "gate_count",
    "lstm_flatten",
    "lstm_unflatten",
]

GATE_NAMES = ("i", "f", "g", "o")  # input, forget, candidate, output


@dataclass
class LstmLayer:
    # per gate: input weights (hidden, in), recurrent weights (hidden, hidden), bias
    w: dict
    u: dict
    b: dict


@dataclass
class LstmParams:
    num_layers: int
    hidden: int
    layers: list
    head_w: np.ndarray  # (hidden,)
    head_b: float

    @property
    def n_params(self) -> int:
        total = 0
        for layer in self.layers:
            for g in GATE_NAMES:
                total += layer.w[g].size + layer.u[g].size + layer.b[g].size
        return total + self.head_w.size + 1


@dataclass
class DropoutSpec:
    """Inverted dropout between LSTM layers; exact identity in eval mode."""

    rate: float = 0.1
    mode: str = "eval"  # "train" | "eval"
    seed: int | None = None

    def __post_init__(self):
        if not 0.0 <= self.rate < 1.0:
            raise ValueError("dropout rate must be in [0, 1)")
        if self.mode not in ("train", "eval"):
            raise ValueError(f"unknown dropout mode {self.mode!r}")


def lstm_init(num_layers: int = 4, hidden: int = 64, seed: int = 0) -> LstmParams:
    """Uniform(+-1/sqrt(hidden)) weights; forget-gate bias +1, others zero."""
    if num_layers < 1 or hidden < 1:
        raise ValueError("num_layers and hidden must be positive")
    rng = np.random.default_rng(seed)
    bound = 1.0 / np.sqrt(hidden)
    layers = []
    for l in range(num_layers):
        fan_in = 2 if l == 0 else hidden
        w, u, b = {}, {}, {}
        for g in GATE_NAMES:
            w[g] = rng.uniform(-bound, bound, size=(hidden, fan_in))
            u[g] = rng.uniform(-bound, bound, size=(hidden, hidden))
            b[g] = np.full(hidden, 1.0) if g == "f" else np.zeros(hidden)
        layers.append(LstmLayer(w, u, b))
    head_w = rng.uniform(-bound, bound, size=hidden)
    return LstmParams(num_layers, hidden, layers, head_w, 0.0)


def gate_count(params: LstmParams) -> int:
    """Number of sigmoid gates: layers x units x 3 (input, forget, output)."""
    return params.num_layers * params.hidden * 3


def lstm_forward(params: LstmParams, a_norm, t_norm, dropout: DropoutSpec | None = None, rng=None):
    """Evaluate at one point; inputs may be floats or Dual2."""
    if dropout is None:
        dropout = DropoutSpec(mode="eval")
    train = dropout.mode == "train" and dropout.rate > 0.0
    if train and rng is None:
        rng = np.random.default_rng(dropout.seed)

    x = [a_norm, t_norm]
    for l, layer in enumerate(params.layers):
        h = []
        for j in range(params.hidden):
            zi = _affine(layer.w["i"], layer.b["i"], j, x)
            zf = _affine(layer.w["f"], layer.b["f"], j, x)
            zg = _affine(layer.w["g"], layer.b["g"], j, x)
            zo = _affine(layer.w["o"], layer.b["o"], j, x)
            i_gate = sigmoid(zi)
            f_gate = sigmoid(zf)  # acts on the zero initial cell state
            g_cand = tanh(zg)
            o_gate = sigmoid(zo)
            c_new = f_gate * 0.0 + i_gate * g_cand
            h.append(o_gate * tanh(c_new))
        if train and l < params.num_layers - 1:
            keep = 1.0 - dropout.rate
            mask = (rng.random(params.hidden) >= dropout.rate).astype(float)
            h = [hj * (m / keep) for hj, m in zip(h, mask)]
        x = h
    out = params.head_b
    for j in range(params.hidden):
        out = out + params.head_w[j] * x[j]
    return out


def _affine(W, b, j, x):
    acc = b[j]
    for k, xk in enumerate(x):
        acc = acc + W[j, k] * xk
    return acc


def lstm_flatten(params: LstmParams) -> np.ndarray:
    parts = []
    for layer in params.layers:
        for g in GATE_NAMES:
            parts.append(layer.w[g].ravel())
            parts.append(layer.u[g].ravel())
            parts.append(layer.b[g])
    parts.append(params.head_w)
    parts.append(np.array([params.head_b]))
    return np.concatenate(parts)


def lstm_unflatten(num_layers: int, hidden: int, flat: np.ndarray) -> LstmParams:
    flat = np.asarray(flat, dtype=float)
    layers = []
    pos = 0

    def take(shape):
        nonlocal pos
        n = int(np.prod(shape))
        if pos + n > flat.size:
            raise ValueError("flat vector too short for architecture")
        out = flat[pos : pos + n].reshape(shape).copy()
        pos += n
        return out

    for l in range(num_layers):
        fan_in = 2 if l == 0 else hidden
        w, u, b = {}, {}, {}
        for g in GATE_NAMES:
            w[g] = take((hidden, fan_in))
            u[g] = take((hidden, hidden))
            b[g] = take((hidden,))
        layers.append(LstmLayer(w, u, b))
    head_w = take((hidden,))
    head_b = float(take((1,))[0])
    if pos != flat.size:
        raise ValueError(f"flat vector has {flat.size} entries, architecture needs {pos}")
    return LstmParams(num_layers, hidden, layers, head_w, head_b)
