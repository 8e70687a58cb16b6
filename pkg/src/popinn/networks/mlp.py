"""Feed-forward tanh surrogate for the normalized population density.

The scalar forward pass works in whichever algebra the inputs use: plain
floats, or Dual2 values carrying the input tangents.  Batched evaluation
for training lives in ``networks.batched``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..autodiff import Tape
from ..autodiff.dual import tanh

__all__ = ["MlpParams", "mlp_init", "mlp_forward", "mlp_flatten", "mlp_unflatten", "mlp_tape_forward"]

DEFAULT_WIDTHS = (2, 128, 128, 64, 1)


@dataclass
class MlpParams:
    widths: tuple
    weights: list  # per layer, shape (out, in)
    biases: list   # per layer, shape (out,)

    @property
    def n_params(self) -> int:
        return sum(w.size + b.size for w, b in zip(self.weights, self.biases))


def _check_widths(widths):
    widths = tuple(int(w) for w in widths)
    if len(widths) < 2 or widths[0] != 2 or widths[-1] != 1 or any(w <= 0 for w in widths):
        raise ValueError(f"invalid widths {widths}: need [2, ..., 1] with positive entries")
    return widths


def mlp_init(widths=DEFAULT_WIDTHS, seed: int = 0) -> MlpParams:
    """Glorot-uniform weights, zero biases, deterministic for a fixed seed."""
    widths = _check_widths(widths)
    rng = np.random.default_rng(seed)
    weights, biases = [], []
    for fan_in, fan_out in zip(widths[:-1], widths[1:]):
        bound = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-bound, bound, size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out))
    return MlpParams(widths, weights, biases)


def mlp_forward(params: MlpParams, a_norm, t_norm):
    """Evaluate at one point.  Inputs may be floats or Dual2."""
    x = [a_norm, t_norm]
    last = len(params.weights) - 1
    for l, (W, b) in enumerate(zip(params.weights, params.biases)):
        z = []
        for j in range(W.shape[0]):
            acc = b[j]
            for k in range(W.shape[1]):
                acc = acc + W[j, k] * x[k]
            z.append(acc if l == last else tanh(acc))
        x = z
    return x[0]


def mlp_flatten(params: MlpParams) -> np.ndarray:
    parts = []
    for W, b in zip(params.weights, params.biases):
        parts.append(W.ravel())
        parts.append(b)
    return np.concatenate(parts)


def mlp_unflatten(widths, flat: np.ndarray) -> MlpParams:
    widths = _check_widths(widths)
    expected = sum((i + 1) * o for i, o in zip(widths[:-1], widths[1:]))
    flat = np.asarray(flat, dtype=float)
    if flat.size != expected:
        raise ValueError(f"flat vector has {flat.size} entries, architecture needs {expected}")
    weights, biases = [], []
    pos = 0
    for fan_in, fan_out in zip(widths[:-1], widths[1:]):
        n = fan_out * fan_in
        weights.append(flat[pos : pos + n].reshape(fan_out, fan_in).copy())
        pos += n
        biases.append(flat[pos : pos + fan_out].copy())
        pos += fan_out
    return MlpParams(widths, weights, biases)


def mlp_tape_forward(tape: Tape, params: MlpParams, a_seed, t_seed) -> int:
    """Record the forward pass on a tape; parameter leaves follow flatten order.

    Returns the root node index of the network output.
    """
    # parameter leaves first, in the exact flatten order
    w_ids, b_ids = [], []
    for W, b in zip(params.weights, params.biases):
        w_ids.append([[tape.param(W[j, k]) for k in range(W.shape[1])] for j in range(W.shape[0])])
        b_ids.append([tape.param(bj) for bj in b])
    x = [tape.input(a_seed), tape.input(t_seed)]
    last = len(params.weights) - 1
    for l in range(len(params.weights)):
        z = []
        for j in range(len(b_ids[l])):
            acc = b_ids[l][j]
            for k, xk in enumerate(x):
                acc = tape.add(acc, tape.mul(w_ids[l][j][k], xk))
            z.append(acc if l == last else tape.tanh(acc))
        x = z
    return x[0]
