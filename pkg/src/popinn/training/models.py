"""Surrogate adapters: a uniform batched-evaluation interface over the two
network families plus a grid-interpolant used as a consistency oracle."""
from __future__ import annotations

import numpy as np

from ..networks import batched
from ..networks.lstm import (
    DropoutSpec,
    LstmParams,
    lstm_flatten,
    lstm_forward,
    lstm_init,
    lstm_unflatten,
)
from ..networks.mlp import MlpParams, mlp_flatten, mlp_forward, mlp_init, mlp_unflatten
from ..reference import Field

__all__ = ["MlpSurrogate", "LstmSurrogate", "FieldSurrogate", "build_surrogate"]


class MlpSurrogate:
    kind = "mlp"

    def __init__(self, params: MlpParams):
        self.params = params

    @classmethod
    def init(cls, widths, seed):
        return cls(mlp_init(widths, seed))

    @property
    def n_params(self) -> int:
        return self.params.n_params

    def get_flat(self) -> np.ndarray:
        return mlp_flatten(self.params)

    def set_flat(self, flat: np.ndarray) -> None:
        self.params = mlp_unflatten(self.params.widths, flat)

    def arch(self) -> dict:
        return {"widths": list(self.params.widths)}

    def value_batch(self, A, T):
        return batched.mlp_batch_value(self.params, A, T)

    def value_vjp(self, cache, cot):
        return batched.mlp_batch_value_vjp(self.params, cache, cot)

    def dual_batch(self, A, T):
        return batched.mlp_batch_dual(self.params, A, T)

    def dual_vjp(self, cache, c0, ca, ct):
        return batched.mlp_batch_dual_vjp(self.params, cache, c0, ca, ct)

    def scalar(self, a_norm, t_norm):
        return mlp_forward(self.params, a_norm, t_norm)


class LstmSurrogate:
    kind = "lstm"

    def __init__(self, params: LstmParams, dropout_rate: float = 0.1):
        self.params = params
        self.dropout_rate = float(dropout_rate)
        self.mode = "eval"
        self.rng = None  # set per epoch by the trainer when mode == "train"

    @classmethod
    def init(cls, num_layers, hidden, seed, dropout_rate=0.1):
        return cls(lstm_init(num_layers, hidden, seed), dropout_rate)

    @property
    def n_params(self) -> int:
        return self.params.n_params

    def get_flat(self) -> np.ndarray:
        return lstm_flatten(self.params)

    def set_flat(self, flat: np.ndarray) -> None:
        self.params = lstm_unflatten(self.params.num_layers, self.params.hidden, flat)

    def arch(self) -> dict:
        return {
            "num_layers": self.params.num_layers,
            "hidden": self.params.hidden,
            "dropout": self.dropout_rate,
        }

    def train_mode(self, rng) -> None:
        self.mode = "train"
        self.rng = rng

    def eval_mode(self) -> None:
        self.mode = "eval"
        self.rng = None

    @property
    def _keep(self) -> float:
        return 1.0 - self.dropout_rate

    def _draw_masks(self, n_points):
        if self.mode != "train" or self.dropout_rate == 0.0 or self.params.num_layers < 2:
            return None
        return [
            (self.rng.random((self.params.hidden, n_points)) >= self.dropout_rate).astype(float)
            for _ in range(self.params.num_layers - 1)
        ]

    def value_batch(self, A, T):
        masks = self._draw_masks(np.asarray(A).size)
        P, cache = batched.lstm_batch_value(self.params, A, T, masks, self._keep)
        return P, cache

    def value_vjp(self, cache, cot):
        return batched.lstm_batch_value_vjp(self.params, cache, cot, self._keep)

    def dual_batch(self, A, T):
        masks = self._draw_masks(np.asarray(A).size)
        return batched.lstm_batch_dual(self.params, A, T, masks, self._keep)

    def dual_vjp(self, cache, c0, ca, ct):
        return batched.lstm_batch_dual_vjp(self.params, cache, c0, ca, ct, self._keep)

    def scalar(self, a_norm, t_norm):
        return lstm_forward(self.params, a_norm, t_norm, DropoutSpec(self.dropout_rate, "eval"))


class FieldSurrogate:
    """Bilinear interpolant of a solver field, evaluable like a surrogate.

    Used to check that the discrete reference solution nearly satisfies
    the training losses; it has no trainable parameters.
    """

    kind = "field"

    def __init__(self, f: Field):
        self.field = f
        self.grid = f.grid

    def _locate(self, coords, n):
        idx = np.clip((coords * (n - 1)).astype(int), 0, n - 2)
        frac = coords * (n - 1) - idx
        return idx, frac

    def value_batch(self, A, T):
        A = np.asarray(A, dtype=float).ravel()
        T = np.asarray(T, dtype=float).ravel()
        ia, fa = self._locate(A, self.grid.na)
        it, ft = self._locate(T, self.grid.nt)
        v = self.field.values
        P = (
            v[ia, it] * (1 - fa) * (1 - ft)
            + v[ia + 1, it] * fa * (1 - ft)
            + v[ia, it + 1] * (1 - fa) * ft
            + v[ia + 1, it + 1] * fa * ft
        )
        return P, None

    def dual_batch(self, A, T):
        A = np.asarray(A, dtype=float).ravel()
        T = np.asarray(T, dtype=float).ravel()
        ia, fa = self._locate(A, self.grid.na)
        it, ft = self._locate(T, self.grid.nt)
        v = self.field.values
        v00 = v[ia, it]
        v10 = v[ia + 1, it]
        v01 = v[ia, it + 1]
        v11 = v[ia + 1, it + 1]
        P = v00 * (1 - fa) * (1 - ft) + v10 * fa * (1 - ft) + v01 * (1 - fa) * ft + v11 * fa * ft
        dPda = ((v10 - v00) * (1 - ft) + (v11 - v01) * ft) * (self.grid.na - 1)
        dPdt = ((v01 - v00) * (1 - fa) + (v11 - v10) * fa) * (self.grid.nt - 1)
        return P, dPda, dPdt, None

    def value_vjp(self, cache, cot):
        raise TypeError("FieldSurrogate has no parameters")

    dual_vjp = value_vjp


def build_surrogate(kind: str, *, widths=None, num_layers=4, hidden=64, dropout=0.1, seed=0):
    if kind in ("mlp", "pinn"):
        from ..networks.mlp import DEFAULT_WIDTHS

        return MlpSurrogate.init(tuple(widths) if widths else DEFAULT_WIDTHS, seed)
    if kind in ("lstm", "lstm-pinn"):
        return LstmSurrogate.init(num_layers, hidden, seed, dropout)
    raise ValueError(f"unknown model kind {kind!r}")
