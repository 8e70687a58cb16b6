"""Canonical bias-corrected Adam on flat parameter vectors."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import NumericError

__all__ = ["AdamState", "adam_step"]


@dataclass
class AdamState:
    lr: float = 5e-4
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    step: int = 0
    m: np.ndarray | None = None
    v: np.ndarray | None = None

    def _ensure(self, n: int):
        if self.m is None:
            self.m = np.zeros(n)
            self.v = np.zeros(n)
        elif self.m.size != n:
            raise ValueError(f"moment vectors sized {self.m.size}, parameters {n}")


def adam_step(state: AdamState, params: np.ndarray, grads: np.ndarray) -> np.ndarray:
    """One update; returns the new parameter vector and advances ``state``."""
    params = np.asarray(params, dtype=float)
    grads = np.asarray(grads, dtype=float)
    if params.shape != grads.shape:
        raise ValueError(f"length mismatch: {params.size} params vs {grads.size} grads")
    if not np.all(np.isfinite(grads)):
        bad = int(np.argmax(~np.isfinite(grads)))
        raise NumericError(f"non-finite gradient at flat index {bad}")
    state._ensure(params.size)
    state.step += 1
    state.m = state.beta1 * state.m + (1.0 - state.beta1) * grads
    state.v = state.beta2 * state.v + (1.0 - state.beta2) * grads * grads
    m_hat = state.m / (1.0 - state.beta1 ** state.step)
    v_hat = state.v / (1.0 - state.beta2 ** state.step)
    return params - state.lr * m_hat / (np.sqrt(v_hat) + state.eps)
