"""Central-difference gradient verification."""
from __future__ import annotations

import math
from typing import Callable

import numpy as np

from ..errors import NumericError

__all__ = ["grad_check", "central_gradient"]


def central_gradient(f: Callable[[np.ndarray], float], theta: np.ndarray, h: float) -> np.ndarray:
    """Central finite-difference gradient of a scalar function."""
    theta = np.asarray(theta, dtype=float)
    g = np.empty_like(theta)
    for i in range(theta.size):
        bump = np.zeros_like(theta)
        bump[i] = h
        fp = f(theta + bump)
        fm = f(theta - bump)
        if not (math.isfinite(fp) and math.isfinite(fm)):
            raise NumericError(f"non-finite evaluation while differencing coordinate {i}")
        g[i] = (fp - fm) / (2.0 * h)
    return g


def grad_check(
    f: Callable[[np.ndarray], float],
    grad_f: Callable[[np.ndarray], np.ndarray],
    theta: np.ndarray,
    h: float = 1e-5,
) -> float:
    """Max over coordinates of |analytic - central| / max(|analytic|, 1e-12)."""
    if h <= 0:
        raise ValueError("h must be positive")
    theta = np.asarray(theta, dtype=float)
    analytic = np.asarray(grad_f(theta), dtype=float)
    if analytic.shape != theta.shape:
        raise ValueError("analytic gradient shape mismatch")
    if not np.all(np.isfinite(analytic)):
        raise NumericError("non-finite analytic gradient")
    numeric = central_gradient(f, theta, h)
    denom = np.maximum(np.abs(analytic), 1e-12)
    return float(np.max(np.abs(analytic - numeric) / denom))
